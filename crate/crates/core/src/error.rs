use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("mode index error: {0}")]
    Index(String),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is not symmetric (max asymmetry {max_asymmetry:e})")]
    Asymmetric { max_asymmetry: f64 },
    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("unphysical spectrum: symplectic eigenvalue {nu} is below 1/2")]
    Domain { nu: f64 },
    #[error("symplectic eigenvalue pairing failed ({first} vs {second})")]
    PairingFailure { first: f64, second: f64 },
    #[error("negative discriminant {0:e} in two-mode invariant formula")]
    NegativeDiscriminant(f64),
    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },
    #[error("no sign change of the criterion on [{lo:.6e}, {hi:.6e}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("covariance document: {0}")]
    Document(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    InvalidInput,
    NoThreshold,
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NoSignChange { .. } => ErrorKind::NoThreshold,
            Error::PairingFailure { .. }
            | Error::NegativeDiscriminant(_)
            | Error::NonConvergence { .. } => ErrorKind::Numerical,
            _ => ErrorKind::InvalidInput,
        }
    }
}
