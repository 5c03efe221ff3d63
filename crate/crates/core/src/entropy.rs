//! Spectral entropies of Gaussian states and the q-conditional entropy.
//!
//! A Gaussian state with symplectic spectrum `{ν_k}` has
//! `Tr ρ^q = ∏_k 1 / [(ν_k + ½)^q − (ν_k − ½)^q]`. The conditional entropy of
//! `B` given `A` is `S_q(B|A) = [1 − Tr ρ_AB^q / Tr ρ_A^q] / (q − 1)`, which is
//! non-negative for separable states.

use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::coth_half_beta;
use crate::symplectic::{SymplecticSpectrum, PHYSICAL_TOL};

/// `|q − 1|` below this is treated as the von Neumann limit.
pub const VON_NEUMANN_BAND: f64 = 1e-6;

/// Above this order the spectral products are accumulated as logarithms.
pub const LOG_SPACE_ABOVE: f64 = 50.0;

/// Values below `−NEGATIVITY_TOL` count as negative.
pub const NEGATIVITY_TOL: f64 = 1e-12;

/// Entropic order `q ∈ (0, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QIndex {
    Finite(f64),
    VonNeumann,
    Infinite,
}

impl QIndex {
    pub fn new(q: f64) -> Result<Self> {
        if q == f64::INFINITY {
            return Ok(QIndex::Infinite);
        }
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "entropic order q must lie in (0, inf], got {q}"
            )));
        }
        if (q - 1.0).abs() < VON_NEUMANN_BAND {
            Ok(QIndex::VonNeumann)
        } else {
            Ok(QIndex::Finite(q))
        }
    }

    /// Numeric value, `+∞` for the infinite order.
    pub fn as_f64(&self) -> f64 {
        match *self {
            QIndex::Finite(q) => q,
            QIndex::VonNeumann => 1.0,
            QIndex::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for QIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QIndex::Infinite => f.write_str("inf"),
            q => write!(f, "{}", q.as_f64()),
        }
    }
}

impl FromStr for QIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(QIndex::Infinite),
            _ => {
                let q: f64 = s
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("cannot parse q from {s:?}")))?;
                QIndex::new(q)
            }
        }
    }
}

impl Serialize for QIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            QIndex::Infinite => serializer.serialize_str("inf"),
            q => serializer.serialize_f64(q.as_f64()),
        }
    }
}

impl<'de> Deserialize<'de> for QIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(q) => QIndex::new(q),
            Raw::Text(s) => s.parse(),
        }
        .map_err(de::Error::custom)
    }
}

fn checked_values(spectrum: &SymplecticSpectrum) -> Result<Vec<f64>> {
    spectrum
        .values()
        .iter()
        .map(|&nu| {
            if nu < 0.5 - PHYSICAL_TOL {
                Err(Error::Domain { nu })
            } else {
                Ok(nu.max(0.5))
            }
        })
        .collect()
}

fn check_order(q: f64) -> Result<()> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "entropic order q must be finite and > 0, got {q}"
        )));
    }
    Ok(())
}

/// `ln[(ν + ½)^q − (ν − ½)^q]`, written as
/// `q ln(ν + ½) + ln(1 − ((ν − ½)/(ν + ½))^q)`.
fn log_mode_factor(nu: f64, q: f64) -> f64 {
    let upper = nu + 0.5;
    let log_ratio = (-1.0 / upper).ln_1p();
    q * upper.ln() + (-(q * log_ratio).exp_m1()).ln()
}

fn mode_factor(nu: f64, q: f64) -> f64 {
    let upper = nu + 0.5;
    let log_ratio = (-1.0 / upper).ln_1p();
    upper.powf(q) * -(q * log_ratio).exp_m1()
}

/// `ln ∏_k [(ν_k + ½)^q − (ν_k − ½)^q] = −ln Tr ρ^q`.
fn log_spectral_product(values: &[f64], q: f64) -> f64 {
    if q > LOG_SPACE_ABOVE {
        values.iter().map(|&nu| log_mode_factor(nu, q)).sum()
    } else {
        values
            .iter()
            .map(|&nu| mode_factor(nu, q))
            .product::<f64>()
            .ln()
    }
}

/// `Tr ρ^q` of the Gaussian state with the given symplectic spectrum.
pub fn tr_rho_power(spectrum: &SymplecticSpectrum, q: f64) -> Result<f64> {
    check_order(q)?;
    let values = checked_values(spectrum)?;
    if q > LOG_SPACE_ABOVE {
        Ok((-log_spectral_product(&values, q)).exp())
    } else {
        Ok(1.0 / values.iter().map(|&nu| mode_factor(nu, q)).product::<f64>())
    }
}

/// Entropy of one thermal mode: `(ν + ½) ln(ν + ½) − (ν − ½) ln(ν − ½)`.
fn thermal_mode_entropy(nu: f64) -> f64 {
    let lower = nu - 0.5;
    let lower_term = if lower > 0.0 { lower * lower.ln() } else { 0.0 };
    (nu + 0.5) * (nu + 0.5).ln() - lower_term
}

pub fn von_neumann_entropy(spectrum: &SymplecticSpectrum) -> Result<f64> {
    Ok(checked_values(spectrum)?
        .into_iter()
        .map(thermal_mode_entropy)
        .sum())
}

/// Tsallis entropy `(1 − Tr ρ^q)/(q − 1)`; the von Neumann entropy at `q = 1`.
pub fn tsallis_entropy(spectrum: &SymplecticSpectrum, q: QIndex) -> Result<f64> {
    match q {
        QIndex::Finite(q) => Ok((1.0 - tr_rho_power(spectrum, q)?) / (q - 1.0)),
        QIndex::VonNeumann => von_neumann_entropy(spectrum),
        QIndex::Infinite => Err(Error::InvalidParameter(
            "the Tsallis entropy is only defined for finite q".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionalEntropyResult {
    pub q: QIndex,
    /// `S_q(B|A)` for finite q and the von Neumann limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    /// `W_∞` for the infinite order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<f64>,
    pub entangled: bool,
}

impl ConditionalEntropyResult {
    /// Whichever of `value` or `witness` is populated; its sign decides the criterion.
    pub fn criterion_value(&self) -> f64 {
        self.value
            .or(self.witness)
            .expect("one of value/witness is set")
    }
}

/// `W_∞ = ∏_AB (ν + ½) / ∏_A (ν + ½) − 1`. Negative exactly when `S_q(B|A) → −∞`
/// as `q → ∞`; positive when `S_q(B|A) → 0⁺`.
fn infinite_order_witness(global: &[f64], local: &[f64]) -> f64 {
    let log_global: f64 = global.iter().map(|nu| (nu + 0.5).ln()).sum();
    let log_local: f64 = local.iter().map(|nu| (nu + 0.5).ln()).sum();
    (log_global - log_local).exp_m1()
}

/// `S_q(B|A)` from the spectrum of the whole state and of the conditioning party `A`.
pub fn conditional_q_entropy(
    global: &SymplecticSpectrum,
    local: &SymplecticSpectrum,
    q: QIndex,
) -> Result<ConditionalEntropyResult> {
    let global = checked_values(global)?;
    let local = checked_values(local)?;
    let (value, witness) = match q {
        QIndex::Finite(q) => {
            // Tr ρ_AB^q / Tr ρ_A^q = P_A / P_AB
            let log_ratio = log_spectral_product(&local, q) - log_spectral_product(&global, q);
            let v = -log_ratio.exp_m1() / (q - 1.0);
            (Some(v), None)
        }
        QIndex::VonNeumann => {
            let s_ab: f64 = global.iter().copied().map(thermal_mode_entropy).sum();
            let s_a: f64 = local.iter().copied().map(thermal_mode_entropy).sum();
            (Some(s_ab - s_a), None)
        }
        QIndex::Infinite => (None, Some(infinite_order_witness(&global, &local))),
    };
    let sign_carrier = value.or(witness).unwrap();
    Ok(ConditionalEntropyResult {
        q,
        value,
        witness,
        entangled: sign_carrier < -NEGATIVITY_TOL,
    })
}

/// Closed-form `S_q(B|A)` of the two-mode squeezed thermal state, conditioning on
/// either mode:
///
/// `S_q = [1 − 2^q ((c·ch + 1)^q − (c·ch − 1)^q) / ((c + 1)^q − (c − 1)^q)²] / (q − 1)`
///
/// with `c = coth(β/2)` and `ch = cosh r`. Evaluated as
/// `(2(c·ch + 1)/(c + 1)²)^q (1 − y^q)/(1 − z^q)²`, `y = (c·ch − 1)/(c·ch + 1)`,
/// `z = (c − 1)/(c + 1)`, which cannot overflow.
pub fn squeezed_thermal_sq_closed_form(r: f64, temperature: f64, q: f64) -> Result<f64> {
    check_order(q)?;
    if q == 1.0 {
        return Err(Error::InvalidParameter("closed form needs q != 1".into()));
    }
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be finite and > 0, got {temperature}"
        )));
    }
    let c = coth_half_beta(temperature);
    let cc = c * r.cosh();
    let base = 2.0 * (cc + 1.0) / (c + 1.0).powi(2);
    let one_minus_pow = |x: f64| -(q * x.ln()).exp_m1();
    let y = (cc - 1.0) / (cc + 1.0);
    let z = (c - 1.0) / (c + 1.0);
    let ratio = base.powf(q) * one_minus_pow(y) / one_minus_pow(z).powi(2);
    Ok((1.0 - ratio) / (q - 1.0))
}
