//! Entanglement criteria for bipartite Gaussian states.
//!
//! Covariance matrices use mode-major quadrature ordering `(x₁, p₁, …, xₙ, pₙ)`
//! with vacuum variance ½ (ħ = ω = k_B = 1).

pub mod error;
pub mod symplectic;

pub use error::{Error, ErrorKind, Result};
pub mod document;
pub mod entropy;
pub mod families;
pub mod separability;
pub mod state;
pub mod thresholds;
