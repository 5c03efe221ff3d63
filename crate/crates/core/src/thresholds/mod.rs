//! Separability thresholds: where a criterion changes sign along a one-parameter family.

pub mod figures;
mod root;
mod scan;

pub use root::{find_root, try_find_root, RootOptions, ThresholdResult, DEFAULT_TOL};
pub use scan::{
    criterion_value, entropy_curve, log_spaced, q_sweep, threshold, Criterion, Family, ScanSpec,
    ScanVariable, SweepRow, THETA_BRACKET, THETA_STEP, T_BRACKET, T_MAX,
};
