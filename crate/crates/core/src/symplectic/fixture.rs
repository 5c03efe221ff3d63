//! Elementary symplectic matrices and random products of them.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::Matrix;

const MAX_SQUEEZE: f64 = 1.5;

/// Phase rotation `[[cos φ, sin φ], [−sin φ, cos φ]]` on one mode.
pub fn rotation(n_modes: usize, mode: usize, phi: f64) -> Matrix {
    let mut s = Matrix::identity(2 * n_modes);
    let (sin, cos) = phi.sin_cos();
    let (x, p) = (2 * mode, 2 * mode + 1);
    s[(x, x)] = cos;
    s[(x, p)] = sin;
    s[(p, x)] = -sin;
    s[(p, p)] = cos;
    s
}

/// Single-mode squeezer `diag(e^s, e^{−s})`.
pub fn squeezer(n_modes: usize, mode: usize, s: f64) -> Matrix {
    let mut m = Matrix::identity(2 * n_modes);
    m[(2 * mode, 2 * mode)] = s.exp();
    m[(2 * mode + 1, 2 * mode + 1)] = (-s).exp();
    m
}

/// 50:50 beam splitter: `x_a' = (x_a + x_b)/√2`, `x_b' = (x_b − x_a)/√2`, same for momenta.
pub fn beam_splitter(n_modes: usize, a: usize, b: usize) -> Matrix {
    assert_ne!(a, b, "beam splitter needs two distinct modes");
    let mut m = Matrix::identity(2 * n_modes);
    for quad in 0..2 {
        let (i, j) = (2 * a + quad, 2 * b + quad);
        m[(i, i)] = FRAC_1_SQRT_2;
        m[(i, j)] = FRAC_1_SQRT_2;
        m[(j, i)] = -FRAC_1_SQRT_2;
        m[(j, j)] = FRAC_1_SQRT_2;
    }
    m
}

/// Deterministic pseudo-random symplectic matrix for tests.
///
/// Product of between 1 and `2n + 2` factors drawn from rotations, squeezers
/// with `|s| ≤ 1.5`, and 50:50 beam splitters.
pub fn make_test_symplectic(n_modes: usize, seed: u64) -> Matrix {
    assert!(n_modes >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(1..=2 * n_modes + 2);
    let mut s = Matrix::identity(2 * n_modes);
    for _ in 0..len {
        let kind = if n_modes > 1 {
            rng.gen_range(0..3)
        } else {
            rng.gen_range(0..2)
        };
        let factor = match kind {
            0 => rotation(n_modes, rng.gen_range(0..n_modes), rng.gen_range(0.0..TAU)),
            1 => squeezer(
                n_modes,
                rng.gen_range(0..n_modes),
                rng.gen_range(-MAX_SQUEEZE..=MAX_SQUEEZE),
            ),
            _ => {
                let a = rng.gen_range(0..n_modes);
                let b = (a + rng.gen_range(1..n_modes)) % n_modes;
                beam_splitter(n_modes, a, b)
            }
        };
        s = &factor * &s;
    }
    s
}
