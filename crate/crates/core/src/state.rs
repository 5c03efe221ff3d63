//! Covariance-matrix model of Gaussian states: physicality, marginals, partial transpose.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{symplectic_spectrum, Matrix, SymMatrix, SymplecticSpectrum, PHYSICAL_TOL};

/// Second-moment matrix of an `n`-mode Gaussian state.
///
/// Only symmetry and even dimension are enforced on construction; positive
/// definiteness and the uncertainty bound are checked by [`CovarianceMatrix::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    mat: SymMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalityVerdict {
    /// Smallest symplectic eigenvalue; `None` when the matrix is not positive definite.
    pub min_nu: Option<f64>,
    pub physical: bool,
}

impl CovarianceMatrix {
    pub fn new(mat: SymMatrix) -> Self {
        CovarianceMatrix { mat }
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Ok(Self::new(SymMatrix::from_rows(rows)?))
    }

    /// `½ I` on `n_modes` modes.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        Ok(Self::new(SymMatrix::identity(2 * n_modes)?.scaled(0.5)))
    }

    pub fn n_modes(&self) -> usize {
        self.mat.dim() / 2
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.mat
    }

    pub fn symplectic_spectrum(&self) -> Result<SymplecticSpectrum> {
        symplectic_spectrum(&self.mat)
    }

    pub fn validate(&self) -> PhysicalityVerdict {
        match self.symplectic_spectrum() {
            Ok(spec) => PhysicalityVerdict {
                min_nu: Some(spec.min()),
                physical: spec.is_physical(),
            },
            Err(_) => PhysicalityVerdict {
                min_nu: None,
                physical: false,
            },
        }
    }

    /// Like [`validate`](Self::validate) but turns an unphysical state into an error.
    pub fn require_physical(&self) -> Result<SymplecticSpectrum> {
        let spec = self.symplectic_spectrum()?;
        if !spec.is_physical() {
            return Err(Error::Domain { nu: spec.min() });
        }
        Ok(spec)
    }

    fn check_modes(&self, modes: &[usize], what: &str) -> Result<()> {
        if modes.is_empty() {
            return Err(Error::Index(format!("{what}: empty mode list")));
        }
        let n = self.n_modes();
        for (i, &m) in modes.iter().enumerate() {
            if m >= n {
                return Err(Error::Index(format!(
                    "{what}: mode {m} out of range for a {n}-mode state"
                )));
            }
            if modes[..i].contains(&m) {
                return Err(Error::Index(format!("{what}: mode {m} listed twice")));
            }
        }
        Ok(())
    }

    /// Marginal on `keep`, in the order given.
    pub fn reduce(&self, keep: &[usize]) -> Result<CovarianceMatrix> {
        self.check_modes(keep, "reduce")?;
        let idx: Vec<usize> = keep.iter().flat_map(|&k| [2 * k, 2 * k + 1]).collect();
        let rows: Vec<Vec<f64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.mat.get(i, j)).collect())
            .collect();
        CovarianceMatrix::from_rows(&rows)
    }

    /// Flips the sign of the momentum quadrature of every mode in `modes`.
    pub fn partial_transpose(&self, modes: &[usize]) -> Result<CovarianceMatrix> {
        self.check_modes(modes, "partial transpose")?;
        let dim = self.mat.dim();
        let mut sign = vec![1.0; dim];
        for &m in modes {
            sign[2 * m + 1] = -1.0;
        }
        let mut out = self.mat.as_matrix().clone();
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] *= sign[i] * sign[j];
            }
        }
        Ok(CovarianceMatrix::new(SymMatrix::new(out)?))
    }

    /// `S V Sᵀ`.
    pub fn transform(&self, s: &Matrix) -> Result<CovarianceMatrix> {
        Ok(CovarianceMatrix::new(self.mat.congruence(s)?))
    }

    pub fn is_physical(&self) -> bool {
        self.validate()
            .min_nu
            .is_some_and(|nu| nu >= 0.5 - PHYSICAL_TOL)
    }
}

/// Split of the modes `0..n` into the two parties `A` and `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModePartition {
    #[serde(rename = "A")]
    modes_a: Vec<usize>,
    #[serde(rename = "B")]
    modes_b: Vec<usize>,
}

impl ModePartition {
    pub fn new(mut modes_a: Vec<usize>, mut modes_b: Vec<usize>, n_modes: usize) -> Result<Self> {
        modes_a.sort_unstable();
        modes_b.sort_unstable();
        if modes_a.is_empty() || modes_b.is_empty() {
            return Err(Error::Partition(
                "both parties need at least one mode".into(),
            ));
        }
        let mut all: Vec<usize> = modes_a.iter().chain(&modes_b).copied().collect();
        all.sort_unstable();
        if all != (0..n_modes).collect::<Vec<_>>() {
            return Err(Error::Partition(format!(
                "A={modes_a:?}, B={modes_b:?} is not a disjoint cover of modes 0..{n_modes}"
            )));
        }
        Ok(ModePartition { modes_a, modes_b })
    }

    /// `A = {0}`, `B` = everything else.
    pub fn first_vs_rest(n_modes: usize) -> Result<Self> {
        Self::new(vec![0], (1..n_modes).collect(), n_modes)
    }

    pub fn modes_a(&self) -> &[usize] {
        &self.modes_a
    }

    pub fn modes_b(&self) -> &[usize] {
        &self.modes_b
    }

    pub fn n_modes(&self) -> usize {
        self.modes_a.len() + self.modes_b.len()
    }

    pub fn swapped(&self) -> ModePartition {
        ModePartition {
            modes_a: self.modes_b.clone(),
            modes_b: self.modes_a.clone(),
        }
    }
}
