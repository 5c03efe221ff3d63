//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::process::ExitCode;

use gsep_core::entropy::{
    conditional_q_entropy, squeezed_thermal_sq_closed_form, tr_rho_power, QIndex,
};
use gsep_core::families::{
    beam_splitter_mix, coth_half_beta, squeezed_thermal, waveguide_state, BeamSplitterMixParams,
    SqueezedThermalParams, WaveguideParams,
};
use gsep_core::separability::ppt_min_symplectic;
use gsep_core::state::{CovarianceMatrix, ModePartition};
use gsep_core::symplectic::{
    make_test_symplectic, symplectic_spectrum, two_mode_transposed_spectrum_closed_form, SymMatrix,
    SymplecticSpectrum,
};
use gsep_core::thresholds::{threshold, Criterion, Family, ScanSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn within(name: &str, got: f64, want: f64, tol: f64) -> Check {
    if (got - want).abs() <= tol {
        Ok(format!("{name} = {got:.6}"))
    } else {
        Err(format!("{name} = {got:.6}, expected {want} ± {tol}"))
    }
}

fn all(parts: Vec<Check>) -> Check {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join(", "))
}

fn partition() -> ModePartition {
    ModePartition::first_vs_rest(2).unwrap()
}

fn critical(family: Family, criterion: Criterion) -> Result<f64, String> {
    threshold(&ScanSpec::new(family, criterion))
        .map(|t| t.critical_value)
        .map_err(|e| format!("{family:?} {criterion:?}: {e}"))
}

fn q1() -> Criterion {
    Criterion::QEntropy(QIndex::VonNeumann)
}

fn qinf() -> Criterion {
    Criterion::QEntropy(QIndex::Infinite)
}

fn squeezed(r: f64, t: f64) -> CovarianceMatrix {
    squeezed_thermal(&SqueezedThermalParams::new(r, t).unwrap()).unwrap()
}

fn mixed(eta: f64, t: f64) -> CovarianceMatrix {
    beam_splitter_mix(&BeamSplitterMixParams::new(eta, t).unwrap()).unwrap()
}

fn guide(r: f64, g: f64, theta: f64) -> CovarianceMatrix {
    waveguide_state(&WaveguideParams::new(r, g, theta).unwrap()).unwrap()
}

fn random_spectrum(rng: &mut ChaCha8Rng) -> SymplecticSpectrum {
    let n = rng.gen_range(1..=6);
    let values = (0..n)
        .map(|_| 0.5 + 10.0 * rng.gen::<f64>().powi(2))
        .collect();
    SymplecticSpectrum::new(values).unwrap()
}

fn c1_squeezed_r2() -> Check {
    let fam = Family::SqueezedThermal { r: 2.0 };
    let ppt = critical(fam, Criterion::Ppt)?;
    let exact = 1.0 / (2.0 * (-2.0f64).exp().atanh());
    all(vec![
        within("T_c(1)", critical(fam, q1())?, 1.381, 0.003),
        within("T_c(inf)", critical(fam, qinf())?, 2.82, 0.01),
        within("T_c(PPT)", ppt, 3.672, 0.003),
        within("T_c(PPT) vs 1/(2 atanh e^-2)", ppt, exact, 1e-8),
    ])
}

fn c2_squeezed_r5() -> Check {
    let fam = Family::SqueezedThermal { r: 5.0 };
    all(vec![
        within("T_c(1)", critical(fam, q1())?, 27.3, 0.2),
        within("T_c(inf)", critical(fam, qinf())?, 73.2, 0.5),
        within("T_c(PPT)", critical(fam, Criterion::Ppt)?, 74.2, 0.5),
    ])
}

fn c3_beam_splitter() -> Check {
    let fam = Family::BeamSplitterMix { eta: 4.0 };
    all(vec![
        within("T_c(1)", critical(fam, q1())?, 9.1, 0.1),
        within("T_c(inf)", critical(fam, qinf())?, 9.1, 0.1),
        within("T_c(PPT)", critical(fam, Criterion::Ppt)?, 27.3, 0.3),
    ])
}

fn c4_waveguide() -> Check {
    let fam = Family::Waveguide {
        r: 1.8,
        gamma_over_j: 0.1,
    };
    let (t1, tinf, tppt) = (
        critical(fam, q1())?,
        critical(fam, qinf())?,
        critical(fam, Criterion::Ppt)?,
    );
    let order = if t1 < tinf && tinf < tppt {
        Ok("theta_c(1) < theta_c(inf) < theta_c(PPT)".to_string())
    } else {
        Err(format!("ordering violated: {t1} {tinf} {tppt}"))
    };
    all(vec![
        within("theta_c(1)", t1, 0.19, 0.005),
        within("theta_c(inf)", tinf, 0.202, 0.003),
        within("theta_c(PPT)", tppt, 0.23, 0.005),
        order,
    ])
}

fn c5_ordering() -> Check {
    let mut out = Vec::new();
    for r in [1.0, 2.0, 3.0, 5.0] {
        let fam = Family::SqueezedThermal { r };
        let (a, b, c) = (
            critical(fam, q1())?,
            critical(fam, qinf())?,
            critical(fam, Criterion::Ppt)?,
        );
        if !(a < b && b < c) {
            return Err(format!("r = {r}: {a} < {b} < {c} violated"));
        }
        out.push(format!("r={r}: {a:.4} < {b:.4} < {c:.4}"));
    }
    Ok(out.join("; "))
}

fn c6_normalization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let s = random_spectrum(&mut rng);
        let tr = tr_rho_power(&s, 1.0).map_err(|e| e.to_string())?;
        worst = worst.max((tr - 1.0).abs());
    }
    if worst <= 1e-14 {
        Ok(format!("max |Tr rho - 1| = {worst:.2e} over 1000 spectra"))
    } else {
        Err(format!("max |Tr rho - 1| = {worst:.2e} > 1e-14"))
    }
}

fn c7_purity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let s = random_spectrum(&mut rng);
        let tr = tr_rho_power(&s, 2.0).map_err(|e| e.to_string())?;
        let want: f64 = s.values().iter().map(|nu| 1.0 / (2.0 * nu)).product();
        worst = worst.max((tr - want).abs());
    }
    if worst <= 1e-12 {
        Ok(format!("max |Tr rho^2 - prod 1/(2 nu)| = {worst:.2e}"))
    } else {
        Err(format!("max deviation {worst:.2e} > 1e-12"))
    }
}

/// `Σ_j p_j^q` over the thermal photon-number distribution `p_j = (1 − x) x^j`.
/// At least 200 terms; more when the tail past 200 would still exceed 1e-13.
fn fock_series(nu: f64, q: f64) -> f64 {
    let x = (nu - 0.5) / (nu + 0.5);
    let mut terms = 200;
    if x > 0.0 {
        let per_term = q * x.ln();
        let needed = (-13.0 * std::f64::consts::LN_10 - 10.0) / per_term;
        terms = terms.max(needed.ceil() as usize);
    }
    let mut sum = 0.0;
    let mut comp = 0.0;
    for j in 0..terms {
        let p = (1.0 - x) * x.powi(j as i32);
        let y = p.powf(q) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

fn c8_fock_series() -> Check {
    let mut worst = 0.0f64;
    for k in 0..=45 {
        let nu = 0.5 + 0.1 * f64::from(k);
        let s = SymplecticSpectrum::new(vec![nu]).unwrap();
        for q in [0.5, 1.5, 2.0, 3.0] {
            let tr = tr_rho_power(&s, q).map_err(|e| e.to_string())?;
            worst = worst.max((tr - fock_series(nu, q)).abs());
        }
    }
    if worst <= 1e-10 {
        Ok(format!("max deviation {worst:.2e} for nu in [0.5, 5]"))
    } else {
        Err(format!("max deviation {worst:.2e} > 1e-10"))
    }
}

fn c9_schmidt() -> Check {
    let mut worst = 0.0f64;
    for k in 0..=39 {
        let r = 0.1 + 0.1 * f64::from(k);
        let v = squeezed(r, 1e-3);
        let local = v
            .reduce(&[0])
            .unwrap()
            .symplectic_spectrum()
            .map_err(|e| e.to_string())?;
        let x = (0.5 * r).tanh().powi(2);
        for q in [0.5, 1.5, 2.0, 3.0, 10.0] {
            let tr = tr_rho_power(&local, q).map_err(|e| e.to_string())?;
            let want = (1.0 - x).powf(q) / (1.0 - x.powf(q));
            worst = worst.max((tr - want).abs());
        }
    }
    if worst <= 1e-10 {
        Ok(format!("max deviation {worst:.2e} for r in [0.1, 4]"))
    } else {
        Err(format!("max deviation {worst:.2e} > 1e-10"))
    }
}

fn c10_symplectic_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for trial in 0..1000u64 {
        let n = rng.gen_range(1..=4);
        let mut diag = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let nu = 0.5 + 3.0 * rng.gen::<f64>();
            diag.extend([nu, nu]);
        }
        let base = CovarianceMatrix::new(
            SymMatrix::from_diagonal(&diag)
                .unwrap()
                .congruence(&make_test_symplectic(n, 2 * trial))
                .unwrap(),
        );
        let moved = base
            .transform(&make_test_symplectic(n, 2 * trial + 1))
            .unwrap();
        let a = base.symplectic_spectrum().map_err(|e| e.to_string())?;
        let b = moved.symplectic_spectrum().map_err(|e| e.to_string())?;
        for (x, y) in a.values().iter().zip(b.values()) {
            worst = worst.max((x - y).abs());
        }
    }
    if worst <= 1e-8 {
        Ok(format!(
            "max spectral shift {worst:.2e} over 1000 conjugations"
        ))
    } else {
        Err(format!("max spectral shift {worst:.2e} > 1e-8"))
    }
}

/// Below this |S_q| the relative comparison is ill-conditioned: rounding in the
/// stored matrix entries shifts ν by ~e^{2r}·ε, and near a sign change that is
/// divided by |S_q|. Such points are reported but not held to 1e-12.
const NEAR_CROSSING: f64 = 1e-2;

fn c11_closed_form_entropy() -> Check {
    let mut worst = 0.0f64;
    let mut near = Vec::new();
    let mut checked = 0;
    for r in [0.5, 1.0, 2.0, 3.0] {
        for t in [0.1, 0.3, 0.7, 2.0, 5.0, 20.0] {
            let v = squeezed(r, t);
            let global = v.symplectic_spectrum().map_err(|e| e.to_string())?;
            let local = v
                .reduce(&[0])
                .unwrap()
                .symplectic_spectrum()
                .map_err(|e| e.to_string())?;
            for q in [0.5, 1.5, 2.0, 3.0, 5.0, 10.0] {
                let generic = conditional_q_entropy(&global, &local, QIndex::Finite(q))
                    .map_err(|e| e.to_string())?
                    .criterion_value();
                let closed = squeezed_thermal_sq_closed_form(r, t, q).map_err(|e| e.to_string())?;
                let rel = (generic - closed).abs() / generic.abs().max(closed.abs());
                if closed.abs() < NEAR_CROSSING {
                    near.push(format!(
                        "(r={r}, T={t}, q={q}: S={closed:.2e}, rel {rel:.1e})"
                    ));
                } else {
                    checked += 1;
                    worst = worst.max(rel);
                }
            }
        }
    }
    let skipped = if near.is_empty() {
        String::new()
    } else {
        format!("; near a sign change, not held: {}", near.join(" "))
    };
    if worst <= 1e-12 {
        Ok(format!(
            "max relative deviation {worst:.2e} over {checked} points{skipped}"
        ))
    } else {
        Err(format!(
            "max relative deviation {worst:.2e} > 1e-12{skipped}"
        ))
    }
}

fn c12_beam_splitter_spectra() -> Check {
    let mut worst = 0.0f64;
    for eta in [0.5, 1.0, 2.0, 4.0] {
        for t in [0.1, 0.5, 1.0, 5.0, 9.1, 27.3] {
            let v = mixed(eta, t);
            let a = coth_half_beta(t);
            let b = eta.exp();
            let global = symplectic_spectrum(v.matrix()).map_err(|e| e.to_string())?;
            let mut want = [0.5, 0.5 * a];
            want.sort_by(|x, y| y.total_cmp(x));
            for (x, y) in global.values().iter().zip(want) {
                worst = worst.max((x - y).abs());
            }
            let local_want = 0.25 * ((a + b) * (a + 1.0 / b)).sqrt();
            for keep in [0, 1] {
                let local = symplectic_spectrum(v.reduce(&[keep]).unwrap().matrix())
                    .map_err(|e| e.to_string())?;
                worst = worst.max((local.values()[0] - local_want).abs());
            }
        }
    }
    if worst <= 1e-10 {
        Ok(format!("max deviation {worst:.2e}"))
    } else {
        Err(format!("max deviation {worst:.2e} > 1e-10"))
    }
}

fn c13_transposed_invariant() -> Check {
    let mut states = Vec::new();
    for r in [0.5, 1.0, 2.0, 3.0] {
        for t in [0.1, 1.0, 5.0] {
            states.push(squeezed(r, t));
        }
    }
    for eta in [1.0, 4.0] {
        for t in [0.5, 5.0, 30.0] {
            states.push(mixed(eta, t));
        }
    }
    for k in 0..=25 {
        states.push(guide(1.8, 0.1, 0.02 * f64::from(k)));
    }
    let mut worst = 0.0f64;
    for v in &states {
        let numeric = symplectic_spectrum(v.partial_transpose(&[1]).unwrap().matrix())
            .map_err(|e| e.to_string())?;
        let closed =
            two_mode_transposed_spectrum_closed_form(v.matrix()).map_err(|e| e.to_string())?;
        for (x, y) in numeric.values().iter().zip(closed.values()) {
            worst = worst.max((x - y).abs());
        }
        let min = ppt_min_symplectic(v, &partition()).map_err(|e| e.to_string())?;
        worst = worst.max((min - closed.min()).abs());
    }
    if worst <= 1e-10 {
        Ok(format!(
            "max deviation {worst:.2e} over {} states",
            states.len()
        ))
    } else {
        Err(format!("max deviation {worst:.2e} > 1e-10"))
    }
}

fn c14_q_to_one() -> Check {
    let mut states = Vec::new();
    for (r, t) in [(1.0, 0.3), (2.0, 1.0), (2.0, 5.0), (5.0, 27.0)] {
        states.push(squeezed(r, t));
    }
    states.push(mixed(4.0, 3.0));
    states.push(guide(1.8, 0.1, 0.1));
    let mut worst = 0.0f64;
    for v in &states {
        let global = v.symplectic_spectrum().map_err(|e| e.to_string())?;
        let local = v
            .reduce(&[0])
            .unwrap()
            .symplectic_spectrum()
            .map_err(|e| e.to_string())?;
        let vn = conditional_q_entropy(&global, &local, QIndex::VonNeumann)
            .map_err(|e| e.to_string())?
            .criterion_value();
        for q in [1.0 - 1e-4, 1.0 + 1e-4] {
            let near = conditional_q_entropy(&global, &local, QIndex::new(q).unwrap())
                .map_err(|e| e.to_string())?
                .criterion_value();
            worst = worst.max((near - vn).abs());
        }
    }
    if worst <= 1e-3 {
        Ok(format!("max |S_(1±1e-4) - S_1| = {worst:.2e}"))
    } else {
        Err(format!("max |S_(1±1e-4) - S_1| = {worst:.2e} > 1e-3"))
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 14] = [
        ("squeezed thermal r=2 thresholds", c1_squeezed_r2),
        ("squeezed thermal r=5 thresholds", c2_squeezed_r5),
        ("beam-splitter mix eta=4 thresholds", c3_beam_splitter),
        ("waveguide thresholds and ordering", c4_waveguide),
        ("threshold ordering over r", c5_ordering),
        ("normalization", c6_normalization),
        ("purity identity", c7_purity),
        ("Fock series", c8_fock_series),
        ("Schmidt spectrum", c9_schmidt),
        ("symplectic invariance", c10_symplectic_invariance),
        (
            "closed-form S_q vs spectral pipeline",
            c11_closed_form_entropy,
        ),
        (
            "beam-splitter closed-form spectra",
            c12_beam_splitter_spectra,
        ),
        ("partial-transpose invariant", c13_transposed_invariant),
        ("q -> 1 continuity", c14_q_to_one),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
