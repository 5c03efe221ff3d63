//! The two-mode state families: squeezed thermal, squeezed/thermal beam-splitter
//! mix, and the lossy coupled-waveguide output.
//!
//! Temperatures are dimensionless with `β = 1/T`. Waveguide time enters only as
//! the scaled time `θ = 𝒥t/π` together with the loss ratio `γ/𝒥`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::CovarianceMatrix;

/// `coth(β/2) = coth(1/(2T))`, as `1 + 2/(e^{1/T} − 1)`.
pub fn coth_half_beta(temperature: f64) -> f64 {
    1.0 + 2.0 / (1.0 / temperature).exp_m1()
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be finite and > 0, got {t}"
        )));
    }
    Ok(())
}

fn check_non_negative(name: &str, x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "{name} must be finite and >= 0, got {x}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezedThermalParams {
    pub r: f64,
    pub temperature: f64,
}

impl SqueezedThermalParams {
    pub fn new(r: f64, temperature: f64) -> Result<Self> {
        check_non_negative("squeezing r", r)?;
        check_temperature(temperature)?;
        Ok(SqueezedThermalParams { r, temperature })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamSplitterMixParams {
    pub eta: f64,
    pub temperature: f64,
}

impl BeamSplitterMixParams {
    pub fn new(eta: f64, temperature: f64) -> Result<Self> {
        if !eta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "eta must be finite, got {eta}"
            )));
        }
        check_temperature(temperature)?;
        Ok(BeamSplitterMixParams { eta, temperature })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveguideParams {
    pub r: f64,
    pub gamma_over_j: f64,
    pub theta: f64,
}

impl WaveguideParams {
    pub fn new(r: f64, gamma_over_j: f64, theta: f64) -> Result<Self> {
        check_non_negative("squeezing r", r)?;
        check_non_negative("gamma/J", gamma_over_j)?;
        check_non_negative("theta", theta)?;
        Ok(WaveguideParams {
            r,
            gamma_over_j,
            theta,
        })
    }

    /// The entries `(f, g, h)` of the waveguide covariance matrix.
    pub fn fgh(&self) -> (f64, f64, f64) {
        let jt = PI * self.theta;
        let decay = (-2.0 * self.gamma_over_j * jt).exp();
        let sinh_r = self.r.sinh();
        let (sin, cos) = (2.0 * jt).sin_cos();
        let f = 0.5 + decay * (0.5 * self.r).sinh().powi(2);
        let g = -0.5 * decay * sinh_r * sin;
        let h = 0.5 * decay * sinh_r * cos;
        (f, g, h)
    }
}

/// Two thermal modes at temperature `T` after two-mode squeezing `r`.
pub fn squeezed_thermal(p: &SqueezedThermalParams) -> Result<CovarianceMatrix> {
    let p = SqueezedThermalParams::new(p.r, p.temperature)?;
    let k = 0.5 * coth_half_beta(p.temperature);
    let c = k * p.r.cosh();
    let s = k * p.r.sinh();
    CovarianceMatrix::from_rows(&[
        [c, 0.0, s, 0.0],
        [0.0, c, 0.0, -s],
        [s, 0.0, c, 0.0],
        [0.0, -s, 0.0, c],
    ])
}

/// Single-mode squeezed state (`b = e^η`) and a thermal state (`a = coth(β/2)`)
/// mixed on a 50:50 beam splitter.
pub fn beam_splitter_mix(p: &BeamSplitterMixParams) -> Result<CovarianceMatrix> {
    let p = BeamSplitterMixParams::new(p.eta, p.temperature)?;
    let a = coth_half_beta(p.temperature);
    let b = p.eta.exp();
    let inv_b = (-p.eta).exp();
    let rows = [
        [a + b, 0.0, a - b, 0.0],
        [0.0, a + inv_b, 0.0, a - inv_b],
        [a - b, 0.0, a + b, 0.0],
        [0.0, a - inv_b, 0.0, a + inv_b],
    ]
    .map(|row| row.map(|x| 0.25 * x));
    CovarianceMatrix::from_rows(&rows)
}

/// Two-mode squeezed vacuum after propagation through two coupled leaky waveguides.
pub fn waveguide_state(p: &WaveguideParams) -> Result<CovarianceMatrix> {
    let p = WaveguideParams::new(p.r, p.gamma_over_j, p.theta)?;
    let (f, g, h) = p.fgh();
    CovarianceMatrix::from_rows(&[
        [f, g, h, 0.0],
        [g, f, 0.0, -h],
        [h, 0.0, f, g],
        [0.0, -h, g, f],
    ])
}
