//! Turning command-line flags and matrix files into states.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use gsep_core::document;
use gsep_core::entropy::QIndex;
use gsep_core::state::{CovarianceMatrix, ModePartition};
use gsep_core::thresholds::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    /// Two-mode squeezed thermal state (needs --r; scans T)
    SqueezedThermal,
    /// Squeezed and thermal modes mixed on a 50:50 beam splitter (needs --eta; scans T)
    BeamSplitter,
    /// Squeezed vacuum through two coupled lossy waveguides (needs --r, --gamma-over-j; scans theta)
    Waveguide,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// State family
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Two-mode squeezing parameter r >= 0
    #[arg(long)]
    pub r: Option<f64>,
    /// Single-mode squeezing eta of the beam-splitter family
    #[arg(long)]
    pub eta: Option<f64>,
    /// Loss ratio gamma/J of the waveguide family
    #[arg(long = "gamma-over-j")]
    pub gamma_over_j: Option<f64>,
}

fn need(value: Option<f64>, flag: &str, family: FamilyName) -> Result<f64> {
    match value {
        Some(v) => Ok(v),
        None => bail!(invalid(format!(
            "--{flag} is required for --family {}",
            family_name(family)
        ))),
    }
}

fn family_name(f: FamilyName) -> &'static str {
    match f {
        FamilyName::SqueezedThermal => "squeezed-thermal",
        FamilyName::BeamSplitter => "beam-splitter",
        FamilyName::Waveguide => "waveguide",
    }
}

/// An invalid-input error that maps to exit code 2.
pub fn invalid(msg: impl Into<String>) -> gsep_core::Error {
    gsep_core::Error::InvalidParameter(msg.into())
}

impl FamilyArgs {
    pub fn family(&self) -> Result<Family> {
        let Some(name) = self.family else {
            bail!(invalid("--family is required"));
        };
        Ok(match name {
            FamilyName::SqueezedThermal => Family::SqueezedThermal {
                r: need(self.r, "r", name)?,
            },
            FamilyName::BeamSplitter => Family::BeamSplitterMix {
                eta: need(self.eta, "eta", name)?,
            },
            FamilyName::Waveguide => Family::Waveguide {
                r: need(self.r, "r", name)?,
                gamma_over_j: need(self.gamma_over_j, "gamma-over-j", name)?,
            },
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Temperature (units of hbar*omega/k_B)
    #[arg(long = "T")]
    pub temperature: Option<f64>,
    /// Scaled time theta = J t / pi (waveguide)
    #[arg(long)]
    pub theta: Option<f64>,
    /// JSON covariance document instead of a family
    #[arg(long, conflicts_with = "family")]
    pub matrix: Option<PathBuf>,
    /// Modes of party A (the conditioning side), comma separated. Defaults
    /// to the document's partition, else mode 0
    #[arg(long = "party-a", value_delimiter = ',')]
    pub party_a: Option<Vec<usize>>,
}

impl StateArgs {
    pub fn load(&self) -> Result<(CovarianceMatrix, ModePartition)> {
        let (v, doc_partition) = match &self.matrix {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))
                    .map_err(|e| invalid(format!("{e:#}")))?;
                document::parse(&text)?
            }
            None => {
                let family = self.family.family()?;
                let x = match family {
                    Family::Waveguide { .. } => {
                        self.theta.ok_or_else(|| invalid("--theta is required"))?
                    }
                    _ => self.temperature.ok_or_else(|| invalid("--T is required"))?,
                };
                (family.state_at(x)?, None)
            }
        };
        // keeps the error kind: indefinite input is exit 2, a pairing failure exit 4
        v.require_physical()?;
        let n = v.n_modes();
        let partition = match (&self.party_a, doc_partition) {
            (Some(a), _) => {
                let b = (0..n).filter(|k| !a.contains(k)).collect();
                ModePartition::new(a.clone(), b, n)?
            }
            (None, Some(p)) => p,
            (None, None) => ModePartition::first_vs_rest(n)?,
        };
        Ok((v, partition))
    }
}

/// Comma-separated q list; `inf` selects the infinite order.
pub fn parse_q_list(items: &[String]) -> Result<Vec<QIndex>> {
    items
        .iter()
        .map(|s| s.parse::<QIndex>().map_err(Into::into))
        .collect()
}
