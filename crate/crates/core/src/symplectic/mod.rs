//! Dense symmetric linear algebra and symplectic spectra.

mod eigen;
pub mod fixture;
mod matrix;
mod spectrum;

pub use eigen::{pd_sqrt, sym_eigendecomposition, SymEigen};
pub use fixture::make_test_symplectic;
pub use matrix::{Matrix, SymMatrix, SymplecticForm};
pub use spectrum::{
    symplectic_spectrum, two_mode_seralian, two_mode_spectrum_closed_form,
    two_mode_transposed_spectrum_closed_form, SymplecticSpectrum, PHYSICAL_TOL,
};
