//! Bracketed scalar root finding (Brent's method).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Absolute tolerance on the root location.
    pub tol: f64,
    pub max_iter: usize,
    /// Times the bracket may be doubled outward looking for a sign change.
    pub max_expansions: usize,
    /// Open interval the bracket must stay inside.
    pub domain: (f64, f64),
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: DEFAULT_TOL,
            max_iter: 200,
            max_expansions: 60,
            domain: (f64::NEG_INFINITY, f64::INFINITY),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub critical_value: f64,
    pub criterion_value_at_root: f64,
    pub iterations: usize,
    pub bracket_used: (f64, f64),
    /// `max(|f(lo)|, |f(hi)|)` over `bracket_used`, the scale for the residual.
    pub residual_scale: f64,
}

impl ThresholdResult {
    pub fn scaled_residual(&self) -> f64 {
        if self.residual_scale > 0.0 {
            self.criterion_value_at_root.abs() / self.residual_scale
        } else {
            self.criterion_value_at_root.abs()
        }
    }
}

fn straddles(a: f64, b: f64) -> bool {
    (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)
}

fn widen(lo: f64, hi: f64, (dmin, dmax): (f64, f64)) -> (f64, f64) {
    let half = 0.5 * (hi - lo);
    let new_lo = if lo - half > dmin {
        lo - half
    } else {
        0.5 * (lo + dmin)
    };
    let new_hi = if hi + half < dmax {
        hi + half
    } else {
        0.5 * (hi + dmax)
    };
    (new_lo, new_hi)
}

/// Root of a fallible function on `bracket`, expanding it outward until the
/// function changes sign.
pub fn try_find_root<F>(
    mut f: F,
    bracket: (f64, f64),
    opts: &RootOptions,
) -> Result<ThresholdResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = bracket;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidParameter(format!(
            "bracket ({lo}, {hi}) must be finite with lo < hi"
        )));
    }
    let (mut flo, mut fhi) = (f(lo)?, f(hi)?);
    let mut expansions = 0;
    while !straddles(flo, fhi) {
        if expansions == opts.max_expansions {
            return Err(Error::NoSignChange { lo, hi });
        }
        let (new_lo, new_hi) = widen(lo, hi, opts.domain);
        if new_lo != lo {
            lo = new_lo;
            flo = f(lo)?;
        }
        if new_hi != hi {
            hi = new_hi;
            fhi = f(hi)?;
        }
        expansions += 1;
    }
    brent(f, (lo, flo), (hi, fhi), opts)
}

/// Infallible convenience wrapper around [`try_find_root`].
pub fn find_root<F>(mut f: F, bracket: (f64, f64), tol: f64) -> Result<ThresholdResult>
where
    F: FnMut(f64) -> f64,
{
    let opts = RootOptions {
        tol,
        ..RootOptions::default()
    };
    try_find_root(|x| Ok(f(x)), bracket, &opts)
}

/// Brent's method on a bracket with `f(a)·f(b) < 0`.
fn brent<F>(
    mut f: F,
    (a0, fa0): (f64, f64),
    (b0, fb0): (f64, f64),
    opts: &RootOptions,
) -> Result<ThresholdResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let bracket_used = (a0, b0);
    let residual_scale = fa0.abs().max(fb0.abs());
    let (mut a, mut fa, mut b, mut fb) = (a0, fa0, b0, fb0);
    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);

    for iter in 1..=opts.max_iter {
        if (fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0) {
            // b and c on the same side: reset c to the contrapoint a
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * opts.tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(ThresholdResult {
                critical_value: b,
                criterion_value_at_root: fb,
                iterations: iter,
                bracket_used,
                residual_scale,
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic interpolation
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
    }
    Err(Error::NonConvergence {
        what: "Brent root finder",
        iterations: opts.max_iter,
    })
}
