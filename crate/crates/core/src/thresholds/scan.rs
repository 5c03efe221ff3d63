use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{conditional_q_entropy, QIndex};
use crate::error::{Error, Result};
use crate::families::{
    beam_splitter_mix, squeezed_thermal, waveguide_state, BeamSplitterMixParams,
    SqueezedThermalParams, WaveguideParams,
};
use crate::separability::ppt_min_symplectic;
use crate::state::{CovarianceMatrix, ModePartition};

use super::root::{try_find_root, RootOptions, ThresholdResult, DEFAULT_TOL};

/// Default temperature bracket.
pub const T_BRACKET: (f64, f64) = (1e-3, 200.0);
/// Default scaled-time bracket.
pub const THETA_BRACKET: (f64, f64) = (1e-4, 0.5);
/// Coarse step used to locate the first crossing in scaled time.
pub const THETA_STEP: f64 = 0.01;
/// Temperature bracket expansion never goes past this.
pub const T_MAX: f64 = 1e6;

/// A state family with every parameter except the scanned one fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    SqueezedThermal { r: f64 },
    BeamSplitterMix { eta: f64 },
    Waveguide { r: f64, gamma_over_j: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanVariable {
    #[serde(rename = "T")]
    Temperature,
    Theta,
}

impl Family {
    pub fn scan_variable(&self) -> ScanVariable {
        match self {
            Family::Waveguide { .. } => ScanVariable::Theta,
            _ => ScanVariable::Temperature,
        }
    }

    pub fn default_bracket(&self) -> (f64, f64) {
        match self.scan_variable() {
            ScanVariable::Temperature => T_BRACKET,
            ScanVariable::Theta => THETA_BRACKET,
        }
    }

    /// The state at scan value `x` (temperature or scaled time).
    pub fn state_at(&self, x: f64) -> Result<CovarianceMatrix> {
        match *self {
            Family::SqueezedThermal { r } => squeezed_thermal(&SqueezedThermalParams::new(r, x)?),
            Family::BeamSplitterMix { eta } => {
                beam_splitter_mix(&BeamSplitterMixParams::new(eta, x)?)
            }
            Family::Waveguide { r, gamma_over_j } => {
                waveguide_state(&WaveguideParams::new(r, gamma_over_j, x)?)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "criterion", content = "q", rename_all = "snake_case")]
pub enum Criterion {
    /// Sign of `S_q(B|A)`, or of `W_∞` for the infinite order.
    QEntropy(QIndex),
    /// `ν̃_min − ½`.
    Ppt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub family: Family,
    pub criterion: Criterion,
    /// Defaults to [`Family::default_bracket`].
    pub bracket: Option<(f64, f64)>,
    pub tol: f64,
    pub partition: ModePartition,
}

impl ScanSpec {
    pub fn new(family: Family, criterion: Criterion) -> Self {
        ScanSpec {
            family,
            criterion,
            bracket: None,
            tol: DEFAULT_TOL,
            partition: ModePartition::first_vs_rest(2).expect("two modes"),
        }
    }

    pub fn with_bracket(mut self, bracket: (f64, f64)) -> Self {
        self.bracket = Some(bracket);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_partition(mut self, partition: ModePartition) -> Self {
        self.partition = partition;
        self
    }
}

/// Criterion value at one point of the scan; negative means entangled.
pub fn criterion_value(
    family: &Family,
    criterion: Criterion,
    partition: &ModePartition,
    x: f64,
) -> Result<f64> {
    let v = family.state_at(x)?;
    match criterion {
        Criterion::QEntropy(q) => {
            let global = v.require_physical()?;
            let local = v.reduce(partition.modes_a())?.require_physical()?;
            Ok(conditional_q_entropy(&global, &local, q)?.criterion_value())
        }
        Criterion::Ppt => Ok(ppt_min_symplectic(&v, partition)? - 0.5),
    }
}

/// Scan value at which the criterion changes sign.
///
/// Temperature scans solve on the bracket, expanding it if needed. Scaled-time
/// scans report the first crossing above the bracket's lower end.
pub fn threshold(spec: &ScanSpec) -> Result<ThresholdResult> {
    let (lo, hi) = spec
        .bracket
        .unwrap_or_else(|| spec.family.default_bracket());
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::InvalidParameter(format!(
            "scan bracket ({lo}, {hi}) needs lo < hi"
        )));
    }
    if spec.tol.is_nan() || spec.tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be > 0, got {}",
            spec.tol
        )));
    }
    let f = |x: f64| criterion_value(&spec.family, spec.criterion, &spec.partition, x);
    match spec.family.scan_variable() {
        ScanVariable::Temperature => {
            let opts = RootOptions {
                tol: spec.tol,
                domain: (0.0, T_MAX),
                ..RootOptions::default()
            };
            try_find_root(f, (lo, hi), &opts)
        }
        ScanVariable::Theta => {
            let (a, b) = first_crossing(f, lo, hi, THETA_STEP)?;
            let opts = RootOptions {
                tol: spec.tol,
                max_expansions: 0,
                domain: (0.0, f64::INFINITY),
                ..RootOptions::default()
            };
            try_find_root(f, (a, b), &opts)
        }
    }
}

/// First step interval in `[lo, hi]` over which `f` changes sign.
fn first_crossing<F>(mut f: F, lo: f64, hi: f64, step: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut x = lo;
    let mut fx = f(x)?;
    let mut k = 1u32;
    while x < hi {
        let next = (lo + f64::from(k) * step).min(hi);
        let fnext = f(next)?;
        if (fx < 0.0 && fnext > 0.0) || (fx > 0.0 && fnext < 0.0) {
            return Ok((x, next));
        }
        x = next;
        fx = fnext;
        k += 1;
    }
    Err(Error::NoSignChange { lo, hi })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub q: QIndex,
    /// `None` when the criterion never changes sign in the scanned range.
    pub threshold: Option<ThresholdResult>,
}

impl SweepRow {
    pub fn critical_value(&self) -> Option<f64> {
        self.threshold.map(|t| t.critical_value)
    }
}

/// Threshold of the q-entropy criterion for every order in `q_grid`, followed
/// by the infinite-order row.
pub fn q_sweep(
    family: &Family,
    q_grid: &[f64],
    bracket: Option<(f64, f64)>,
    tol: f64,
) -> Result<Vec<SweepRow>> {
    if let Some(&bad) = q_grid.iter().find(|&&q| q.is_nan() || q < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "sweep orders must be >= 1, got {bad}"
        )));
    }
    if q_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(
            "sweep orders must be sorted ascending".into(),
        ));
    }
    let mut orders = q_grid
        .iter()
        .map(|&q| QIndex::new(q))
        .collect::<Result<Vec<_>>>()?;
    orders.push(QIndex::Infinite);

    orders
        .par_iter()
        .map(|&q| {
            let mut spec = ScanSpec::new(*family, Criterion::QEntropy(q)).with_tol(tol);
            spec.bracket = bracket;
            match threshold(&spec) {
                Ok(t) => Ok(SweepRow {
                    q,
                    threshold: Some(t),
                }),
                Err(Error::NoSignChange { .. }) => Ok(SweepRow { q, threshold: None }),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// `S_q(B|A)` (or `W_∞`) tabulated over scan values.
pub fn entropy_curve(family: &Family, q: QIndex, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    let partition = ModePartition::first_vs_rest(2)?;
    grid.par_iter()
        .map(|&x| {
            Ok((
                x,
                criterion_value(family, Criterion::QEntropy(q), &partition, x)?,
            ))
        })
        .collect()
}

/// `n` points spaced logarithmically from `lo` to `hi`, both included.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64)
                    }
                })
                .collect()
        }
    }
}
