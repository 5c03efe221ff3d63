//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use crate::error::{Error, Result};

use super::matrix::{Matrix, SymMatrix};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-14;
const PD_FLOOR: f64 = 1e-12;

/// Eigenvalues sorted descending; column `k` of `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl SymEigen {
    /// `Q diag(f(λ)) Qᵀ`.
    pub fn reassemble(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.values.len();
        let q = &self.vectors;
        let mapped: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let s: f64 = (0..n).map(|k| q[(i, k)] * mapped[k] * q[(j, k)]).sum();
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition `M = Q diag(λ) Qᵀ` by cyclic Jacobi rotations.
pub fn sym_eigendecomposition(m: &SymMatrix) -> Result<SymEigen> {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let target = OFF_DIAGONAL_TOL * a.frobenius();

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[(k, p)] = new_kp;
                    a[(p, k)] = new_kp;
                    a[(k, q)] = new_kq;
                    a[(q, k)] = new_kq;
                }
                a[(p, p)] -= t * apq;
                a[(q, q)] += t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            what: "Jacobi eigensolver",
            iterations: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(SymEigen { values, vectors })
}

/// Principal square root of a symmetric positive definite matrix.
pub fn pd_sqrt(m: &SymMatrix) -> Result<SymMatrix> {
    let eig = sym_eigendecomposition(m)?;
    let min = eig.values.last().copied().unwrap_or(0.0);
    if min <= PD_FLOOR {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
        });
    }
    SymMatrix::new(eig.reassemble(f64::sqrt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric(n: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect())
            .collect();
        SymMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        let eig = sym_eigendecomposition(&SymMatrix::identity(4).unwrap()).unwrap();
        assert_eq!(eig.values, vec![1.0; 4]);
        assert_eq!(eig.vectors, Matrix::identity(4));
    }

    #[test]
    fn diagonal_sorted_descending() {
        let eig = sym_eigendecomposition(&SymMatrix::from_diagonal(&[1.0, 3.0]).unwrap()).unwrap();
        assert_eq!(eig.values, vec![3.0, 1.0]);
    }

    #[test]
    fn two_by_two_matches_quadratic() {
        let m = SymMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let (tr, det) = (4.0f64, 3.0f64);
        let disc = (tr * tr - 4.0 * det).sqrt();
        let expected = [(tr + disc) / 2.0, (tr - disc) / 2.0];
        let eig = sym_eigendecomposition(&m).unwrap();
        for (got, want) in eig.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn zero_matrix() {
        let eig = sym_eigendecomposition(&SymMatrix::new(Matrix::zeros(2)).unwrap()).unwrap();
        assert_eq!(eig.values, vec![0.0, 0.0]);
    }

    #[test]
    fn reconstruction_and_orthogonality_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in (2..=16).step_by(2) {
            for _ in 0..20 {
                let m = random_symmetric(n, &mut rng);
                let eig = sym_eigendecomposition(&m).unwrap();
                let q = &eig.vectors;
                let qqt = q * &q.transpose();
                assert!(qqt.max_abs_diff(&Matrix::identity(n)) <= 1e-12);
                let back = eig.reassemble(|l| l);
                let scale = m.as_matrix().max_abs();
                assert!(back.max_abs_diff(m.as_matrix()) <= 1e-10 * scale);
                assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn desk_scale_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let m = random_symmetric(64, &mut rng);
        let eig = sym_eigendecomposition(&m).unwrap();
        let back = eig.reassemble(|l| l);
        assert!(back.max_abs_diff(m.as_matrix()) <= 1e-10 * m.as_matrix().max_abs());
    }

    #[test]
    fn sqrt_examples() {
        let id = SymMatrix::identity(4).unwrap();
        assert!(
            pd_sqrt(&id)
                .unwrap()
                .as_matrix()
                .max_abs_diff(id.as_matrix())
                < 1e-15
        );

        let w = pd_sqrt(&SymMatrix::from_diagonal(&[4.0, 9.0]).unwrap()).unwrap();
        assert!(
            w.as_matrix()
                .max_abs_diff(&Matrix::from_diagonal(&[2.0, 3.0]))
                < 1e-15
        );

        let m = SymMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let w = pd_sqrt(&m).unwrap();
        let ww = w.as_matrix() * w.as_matrix();
        assert!(ww.max_abs_diff(m.as_matrix()) <= 1e-12);
    }

    #[test]
    fn sqrt_rejects_indefinite() {
        let m = SymMatrix::from_rows(&[[1.0, 2.0], [2.0, 1.0]]).unwrap();
        assert!(matches!(
            pd_sqrt(&m),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let singular = SymMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        assert!(pd_sqrt(&singular).is_err());
    }
}
