//! Entanglement verdicts: q-conditional entropy signs and the PPT criterion.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{conditional_q_entropy, QIndex};
use crate::error::Result;
use crate::state::{CovarianceMatrix, ModePartition};
use crate::symplectic::SymplecticSpectrum;

/// `ν̃_min` below `½ − PPT_TOL` signals entanglement.
pub const PPT_TOL: f64 = 1e-12;

/// Smallest symplectic eigenvalue of the state with party `B` partially transposed.
pub fn ppt_min_symplectic(v: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    Ok(v.partial_transpose(partition.modes_b())?
        .symplectic_spectrum()?
        .min())
}

/// `E_N = max(0, −ln 2ν̃_min)`, in nats.
pub fn log_negativity(v: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    Ok(log_negativity_from_min_nu(ppt_min_symplectic(
        v, partition,
    )?))
}

fn log_negativity_from_min_nu(min_nu: f64) -> f64 {
    (-(2.0 * min_nu).ln()).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqValue {
    pub q: QIndex,
    /// `S_q(B|A)`, or `W_∞` for the infinite order.
    pub value: f64,
    pub negative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityReport {
    pub global_spectrum: Vec<f64>,
    pub local_spectrum: Vec<f64>,
    pub ppt_min_nu: f64,
    pub ppt_entangled: bool,
    pub s1_value: f64,
    pub s1_negative: bool,
    pub w_inf: f64,
    pub w_inf_negative: bool,
    pub sq_values: Vec<SqValue>,
    pub log_negativity: f64,
}

/// Every criterion on one state. Fails on unphysical input.
pub fn full_report(
    v: &CovarianceMatrix,
    partition: &ModePartition,
    q_list: &[QIndex],
) -> Result<SeparabilityReport> {
    let global = v.require_physical()?;
    let local = v.reduce(partition.modes_a())?.require_physical()?;
    let criterion = |q: QIndex| conditional_q_entropy(&global, &local, q);

    let s1 = criterion(QIndex::VonNeumann)?;
    let w = criterion(QIndex::Infinite)?;
    let sq_values = q_list
        .par_iter()
        .map(|&q| {
            criterion(q).map(|res| SqValue {
                q,
                value: res.criterion_value(),
                negative: res.entangled,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let ppt_min_nu = ppt_min_symplectic(v, partition)?;
    Ok(SeparabilityReport {
        global_spectrum: global.values().to_vec(),
        local_spectrum: local.values().to_vec(),
        ppt_min_nu,
        ppt_entangled: ppt_min_nu < 0.5 - PPT_TOL,
        s1_value: s1.criterion_value(),
        s1_negative: s1.entangled,
        w_inf: w.criterion_value(),
        w_inf_negative: w.entangled,
        sq_values,
        log_negativity: log_negativity_from_min_nu(ppt_min_nu),
    })
}

/// Spectra `(global, local)` for a state and the `A` side of a partition.
pub fn spectra(
    v: &CovarianceMatrix,
    partition: &ModePartition,
) -> Result<(SymplecticSpectrum, SymplecticSpectrum)> {
    Ok((
        v.symplectic_spectrum()?,
        v.reduce(partition.modes_a())?.symplectic_spectrum()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{squeezed_thermal, SqueezedThermalParams};

    fn two_mode() -> ModePartition {
        ModePartition::first_vs_rest(2).unwrap()
    }

    fn squeezed(r: f64, t: f64) -> CovarianceMatrix {
        squeezed_thermal(&SqueezedThermalParams::new(r, t).unwrap()).unwrap()
    }

    #[test]
    fn ppt_of_low_temperature_squeezed_state() {
        let nu = ppt_min_symplectic(&squeezed(2.0, 1e-3), &two_mode()).unwrap();
        assert!((nu - 0.5 * (-2.0f64).exp()).abs() < 1e-12);
        let en = log_negativity(&squeezed(2.0, 1e-3), &two_mode()).unwrap();
        assert!((en - 2.0).abs() < 1e-10);
    }

    #[test]
    fn thermal_product_is_ppt() {
        for t in [0.2, 1.0, 10.0] {
            let nu = ppt_min_symplectic(&squeezed(0.0, t), &two_mode()).unwrap();
            assert!(nu >= 0.5);
            assert_eq!(log_negativity(&squeezed(0.0, t), &two_mode()).unwrap(), 0.0);
        }
    }

    #[test]
    fn vacuum_report() {
        let q = [QIndex::Finite(2.0), QIndex::Finite(0.5), QIndex::Infinite];
        let rep = full_report(&CovarianceMatrix::vacuum(2).unwrap(), &two_mode(), &q).unwrap();
        assert!(!rep.ppt_entangled && !rep.s1_negative && !rep.w_inf_negative);
        assert_eq!(rep.log_negativity, 0.0);
        for sq in &rep.sq_values {
            assert!(sq.value.abs() < 1e-14 && !sq.negative);
        }
    }

    #[test]
    fn report_below_all_thresholds() {
        let rep = full_report(&squeezed(2.0, 1.0), &two_mode(), &[QIndex::Finite(2.0)]).unwrap();
        assert!(rep.s1_negative && rep.w_inf_negative && rep.ppt_entangled);
        assert!(rep.sq_values[0].negative);
    }

    #[test]
    fn report_between_entropic_and_ppt_thresholds() {
        let rep = full_report(&squeezed(2.0, 3.0), &two_mode(), &[]).unwrap();
        assert!(!rep.s1_negative && !rep.w_inf_negative);
        assert!(rep.ppt_entangled);
        assert!(rep.log_negativity > 0.0);
    }

    #[test]
    fn report_rejects_unphysical_state() {
        let v = CovarianceMatrix::vacuum(2).unwrap();
        let squashed = CovarianceMatrix::new(v.matrix().scaled(0.9));
        assert!(full_report(&squashed, &two_mode(), &[]).is_err());
    }
}
