use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gsep_core::document;
use gsep_core::entropy::QIndex;
use gsep_core::separability::{full_report, SeparabilityReport};
use gsep_core::state::ModePartition;
use gsep_core::thresholds::figures::{figure, format_significant};
use gsep_core::thresholds::{log_spaced, q_sweep, threshold, Criterion, ScanSpec, ThresholdResult};
use gsep_core::ErrorKind;
use serde::Serialize;

mod source;

use source::{invalid, parse_q_list, FamilyArgs, StateArgs};

const UNITS: &str = "All quantities are dimensionless: hbar = omega = k_B = 1. \
T is the temperature in units of hbar*omega/k_B (beta = 1/T), and the waveguide \
evolution time enters as theta = J t / pi together with the loss ratio gamma/J. \
Covariance matrices use the ordering (x1, p1, x2, p2, ...) with vacuum variance 1/2.\n\n\
Exit codes: 0 ok, 2 invalid input, 3 no threshold in range, 4 numerical failure.";

#[derive(Debug, Parser)]
#[command(name = "gsep", version, about = "Entanglement criteria for two-mode Gaussian states", after_help = UNITS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CriterionName {
    /// Sign of the conditional q-entropy S_q(B|A)
    QEntropy,
    /// Smallest symplectic eigenvalue of the partial transpose
    Ppt,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate every criterion on one state
    #[command(after_help = UNITS)]
    Analyze {
        #[command(flatten)]
        state: StateArgs,
        /// Entropic orders, comma separated; `inf` for the infinite order
        #[arg(long, value_delimiter = ',', default_value = "1,2,inf")]
        q: Vec<String>,
        /// Also write the covariance matrix as a JSON document
        #[arg(long, value_name = "FILE")]
        dump_matrix: Option<PathBuf>,
    },
    /// Find where a criterion changes sign along a family
    #[command(after_help = UNITS)]
    Threshold {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "q-entropy")]
        criterion: CriterionName,
        /// Entropic order for q-entropy; `inf` for the infinite order
        #[arg(long, default_value = "1")]
        q: String,
        /// Lower end of the scan bracket (T or theta)
        #[arg(long, requires = "hi")]
        lo: Option<f64>,
        /// Upper end of the scan bracket
        #[arg(long, requires = "lo")]
        hi: Option<f64>,
        /// Absolute tolerance on the critical value
        #[arg(long, env = "GSEP_TOL", default_value_t = gsep_core::thresholds::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Thresholds of the q-entropy criterion over a grid of orders, plus q = inf
    #[command(after_help = UNITS)]
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        /// Explicit orders (>= 1, ascending); default is 31 log-spaced values from 1 to 1000
        #[arg(long = "q-grid", value_delimiter = ',')]
        q_grid: Option<Vec<f64>>,
        #[arg(long, requires = "hi")]
        lo: Option<f64>,
        #[arg(long, requires = "lo")]
        hi: Option<f64>,
        #[arg(long, env = "GSEP_TOL", default_value_t = gsep_core::thresholds::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Write the data behind figure 1, 2 or 3 as CSV
    #[command(after_help = UNITS)]
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        /// Output file; stdout if omitted
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, env = "GSEP_TOL", default_value_t = gsep_core::thresholds::DEFAULT_TOL)]
        tol: f64,
    },
    /// Check that a covariance document describes a physical state
    #[command(after_help = UNITS)]
    Validate {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Serialize)]
struct AnalyzeOutput {
    n_modes: usize,
    partition: ModePartition,
    #[serde(flatten)]
    report: SeparabilityReport,
}

#[derive(Serialize)]
struct ThresholdOutput {
    #[serde(flatten)]
    criterion: Criterion,
    #[serde(flatten)]
    family: gsep_core::thresholds::Family,
    #[serde(flatten)]
    result: ThresholdResult,
}

#[derive(Serialize)]
struct ValidateOutput {
    n_modes: usize,
    physical: bool,
    min_nu: Option<f64>,
}

fn check_tol(tol: f64) -> Result<f64> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(invalid(format!("tolerance must be finite and > 0, got {tol}")).into())
    }
}

fn bracket(lo: Option<f64>, hi: Option<f64>) -> Option<(f64, f64)> {
    lo.zip(hi)
}

fn csv_cell(x: Option<f64>) -> String {
    x.map(|v| format_significant(v, 12)).unwrap_or_default()
}

/// Writes to stdout; a closed pipe surfaces as an error instead of a panic.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(value)?))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze {
            state,
            q,
            dump_matrix,
        } => {
            let (v, partition) = state.load()?;
            let q_list = parse_q_list(&q)?;
            if let Some(path) = dump_matrix {
                fs::write(&path, document::to_json(&v, Some(&partition)))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let report = full_report(&v, &partition, &q_list)?;
            print_json(&AnalyzeOutput {
                n_modes: v.n_modes(),
                partition,
                report,
            })?;
        }
        Command::Threshold {
            family,
            criterion,
            q,
            lo,
            hi,
            tol,
            format,
        } => {
            let family = family.family()?;
            let criterion = match criterion {
                CriterionName::QEntropy => Criterion::QEntropy(q.parse::<QIndex>()?),
                CriterionName::Ppt => Criterion::Ppt,
            };
            let mut spec = ScanSpec::new(family, criterion).with_tol(check_tol(tol)?);
            spec.bracket = bracket(lo, hi);
            let result = threshold(&spec)?;
            match format {
                Format::Json => print_json(&ThresholdOutput {
                    criterion,
                    family,
                    result,
                })?,
                Format::Csv => {
                    emit(&format!(
                        "critical_value,criterion_value_at_root,iterations,lo,hi\n{},{},{},{},{}\n",
                        format_significant(result.critical_value, 12),
                        format_significant(result.criterion_value_at_root, 12),
                        result.iterations,
                        format_significant(result.bracket_used.0, 12),
                        format_significant(result.bracket_used.1, 12),
                    ))?;
                }
            }
        }
        Command::Sweep {
            family,
            q_grid,
            lo,
            hi,
            tol,
            format,
        } => {
            let family = family.family()?;
            let grid = q_grid.unwrap_or_else(|| log_spaced(1.0, 1000.0, 31));
            let rows = q_sweep(&family, &grid, bracket(lo, hi), check_tol(tol)?)?;
            match format {
                Format::Json => print_json(&rows)?,
                Format::Csv => {
                    let mut out = String::from("q,critical_value,iterations\n");
                    for row in &rows {
                        out.push_str(&format!(
                            "{},{},{}\n",
                            format_significant(row.q.as_f64(), 12),
                            csv_cell(row.critical_value()),
                            row.threshold
                                .map(|t| t.iterations.to_string())
                                .unwrap_or_default(),
                        ));
                    }
                    emit(&out)?;
                }
            }
        }
        Command::Figure { id, output, tol } => {
            let csv = figure(id, check_tol(tol)?)?.to_csv();
            match output {
                Some(path) => {
                    fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?
                }
                None => emit(&csv)?,
            }
        }
        Command::Validate { matrix } => {
            let text = fs::read_to_string(&matrix)
                .with_context(|| format!("reading {}", matrix.display()))
                .map_err(|e| invalid(format!("{e:#}")))?;
            let (v, _) = document::parse(&text)?;
            let verdict = v.validate();
            print_json(&ValidateOutput {
                n_modes: v.n_modes(),
                physical: verdict.physical,
                min_nu: verdict.min_nu,
            })?;
            if !verdict.physical {
                match verdict.min_nu {
                    Some(nu) => eprintln!(
                        "error: unphysical state: smallest symplectic eigenvalue {nu} is below 1/2"
                    ),
                    None => eprintln!("error: covariance matrix is not positive definite"),
                }
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err
        .chain()
        .find_map(|e| e.downcast_ref::<gsep_core::Error>())
    {
        Some(core) => match core.kind() {
            ErrorKind::InvalidInput => 2,
            ErrorKind::NoThreshold => 3,
            ErrorKind::Numerical => 4,
        },
        // unreadable or unwritable files
        None => 2,
    }
}

fn broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        e.downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) if broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
