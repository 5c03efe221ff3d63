use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::eigen::{pd_sqrt, sym_eigendecomposition};
use super::matrix::{SymMatrix, SymplecticForm};

/// Tolerance below ½ still accepted as physical.
pub const PHYSICAL_TOL: f64 = 1e-9;

const PAIRING_TOL: f64 = 1e-8;

/// Symplectic eigenvalues of a `2n × 2n` covariance matrix, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    values: Vec<f64>,
}

impl SymplecticSpectrum {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Dimension("empty symplectic spectrum".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "symplectic eigenvalue {v} is not a finite non-negative number"
            )));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(SymplecticSpectrum { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n_modes(&self) -> usize {
        self.values.len()
    }

    pub fn source_dim(&self) -> usize {
        2 * self.values.len()
    }

    pub fn min(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn is_physical(&self) -> bool {
        self.min() >= 0.5 - PHYSICAL_TOL
    }

    /// Multiset union, used for product states.
    pub fn union(&self, other: &SymplecticSpectrum) -> SymplecticSpectrum {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        values.sort_by(|a, b| b.total_cmp(a));
        SymplecticSpectrum { values }
    }
}

/// Symplectic spectrum through `K = −(V^{1/2} Ω V^{1/2})²`, whose eigenvalues
/// are the squared symplectic eigenvalues, each appearing twice.
pub fn symplectic_spectrum(v: &SymMatrix) -> Result<SymplecticSpectrum> {
    let n = v.dim() / 2;
    let w = pd_sqrt(v)?;
    let omega = SymplecticForm::new(n);
    let a = &(w.as_matrix() * omega.matrix()) * w.as_matrix();
    let k = SymMatrix::new(&a * &a.transpose())?;
    let eig = sym_eigendecomposition(&k)?;

    let scale = eig.values[0].max(f64::MIN_POSITIVE);
    let values = eig
        .values
        .chunks_exact(2)
        .map(|pair| {
            let (hi, lo) = (pair[0], pair[1]);
            if (hi - lo).abs() > PAIRING_TOL * scale {
                return Err(Error::PairingFailure {
                    first: hi,
                    second: lo,
                });
            }
            Ok((0.5 * (hi + lo)).max(0.0).sqrt())
        })
        .collect::<Result<Vec<_>>>()?;
    SymplecticSpectrum::new(values)
}

/// Unevaluated sum `hi + lo` carrying roughly twice the precision of `f64`.
#[derive(Debug, Clone, Copy)]
struct Compensated {
    hi: f64,
    lo: f64,
}

impl Compensated {
    fn product(a: f64, b: f64) -> Self {
        let hi = a * b;
        Compensated {
            hi,
            lo: a.mul_add(b, -hi),
        }
    }

    fn add(self, other: Compensated) -> Self {
        let s = self.hi + other.hi;
        let bb = s - self.hi;
        let err = (self.hi - (s - bb)) + (other.hi - bb);
        let lo = err + self.lo + other.lo;
        let hi = s + lo;
        Compensated {
            hi,
            lo: lo - (hi - s),
        }
    }

    fn neg(self) -> Self {
        Compensated {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn mul(self, other: Compensated) -> Self {
        let p = Compensated::product(self.hi, other.hi);
        let cross = self.hi * other.lo + self.lo * other.hi;
        p.add(Compensated { hi: cross, lo: 0.0 })
    }

    fn scale(self, k: f64) -> Self {
        self.mul(Compensated { hi: k, lo: 0.0 })
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// 2×2 minor on rows `(r0, r1)` and columns `(c0, c1)`.
fn minor(v: &SymMatrix, (r0, r1): (usize, usize), (c0, c1): (usize, usize)) -> Compensated {
    Compensated::product(v.get(r0, c0), v.get(r1, c1))
        .add(Compensated::product(v.get(r0, c1), v.get(r1, c0)).neg())
}

/// Local symplectic invariants of a two-mode matrix `[[A, C], [Cᵀ, B]]`:
/// `(det A + det B + sign·2 det C, det V, Δ² − 4 det V)`.
///
/// `sign = −1` gives the invariant of the partially transposed matrix.
/// Evaluated in compensated arithmetic; the discriminant vanishes for
/// degenerate spectra and its square root would amplify plain `f64` rounding.
fn invariants(v: &SymMatrix, sign: f64) -> Result<(f64, f64, f64)> {
    if v.dim() != 4 {
        return Err(Error::Dimension(format!(
            "two-mode invariants need a 4x4 matrix, got {0}x{0}",
            v.dim()
        )));
    }
    let delta = minor(v, (0, 1), (0, 1))
        .add(minor(v, (2, 3), (2, 3)))
        .add(minor(v, (0, 1), (2, 3)).scale(2.0 * sign));
    // Laplace expansion along the first two rows
    let cols = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut det = Compensated { hi: 0.0, lo: 0.0 };
    for (idx, &(c0, c1)) in cols.iter().enumerate() {
        let comp = cols[5 - idx];
        let term = minor(v, (0, 1), (c0, c1)).mul(minor(v, (2, 3), comp));
        let parity = (c0 + c1 + 1) % 2 == 0;
        det = det.add(if parity { term } else { term.neg() });
    }
    let disc = delta.mul(delta).add(det.scale(-4.0));
    Ok((delta.value(), det.value(), disc.value()))
}

/// The seralian `Δ = det A + det B + 2 det C` of a two-mode matrix.
pub fn two_mode_seralian(v: &SymMatrix) -> Result<f64> {
    Ok(invariants(v, 1.0)?.0)
}

fn spectrum_from_invariants(delta: f64, det: f64, disc: f64) -> Result<SymplecticSpectrum> {
    if det <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: det,
        });
    }
    if disc < -1e-12 * delta.powi(2).max(1.0) {
        return Err(Error::NegativeDiscriminant(disc));
    }
    let upper_sq = 0.5 * (delta + disc.max(0.0).sqrt());
    // ν₋² = det V / ν₊² avoids cancellation in Δ − √disc
    let lower_sq = det / upper_sq;
    SymplecticSpectrum::new(vec![upper_sq.sqrt(), lower_sq.sqrt()])
}

/// Both symplectic eigenvalues of a 4×4 covariance matrix from its invariants
/// `ν±² = (Δ ± √(Δ² − 4 det V)) / 2`.
pub fn two_mode_spectrum_closed_form(v: &SymMatrix) -> Result<SymplecticSpectrum> {
    let (delta, det, disc) = invariants(v, 1.0)?;
    spectrum_from_invariants(delta, det, disc)
}

/// Symplectic eigenvalues of the partial transpose of a 4×4 matrix, from
/// `Δ̃ = det A + det B − 2 det C`, without forming the transposed matrix.
pub fn two_mode_transposed_spectrum_closed_form(v: &SymMatrix) -> Result<SymplecticSpectrum> {
    let (delta, det, disc) = invariants(v, -1.0)?;
    spectrum_from_invariants(delta, det, disc)
}
