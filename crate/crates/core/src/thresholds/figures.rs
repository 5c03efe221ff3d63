//! Data tables behind the three threshold figures, with CSV output.

use std::fmt::Write as _;

use crate::entropy::QIndex;
use crate::error::{Error, Result};

use super::scan::{entropy_curve, log_spaced, q_sweep, Family};

pub const FIGURE_1_FAMILY: Family = Family::SqueezedThermal { r: 2.0 };
pub const FIGURE_2_FAMILY: Family = Family::BeamSplitterMix { eta: 4.0 };
pub const FIGURE_3_FAMILY: Family = Family::Waveguide {
    r: 1.8,
    gamma_over_j: 0.1,
};

/// Finite orders shown in the beam-splitter entropy curves; a `W_∞` column follows.
pub const FIGURE_2_ORDERS: [f64; 4] = [1.0, 1.5, 2.0, 5.0];

/// Column-oriented numeric table. Infinite values print as `inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_significant(x, 12)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// `%.*g`-style formatting: `digits` significant digits, trailing zeros dropped,
/// locale independent.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn sweep_table(family: &Family, column: &str, tol: f64) -> Result<Table> {
    let rows = q_sweep(family, &log_spaced(1.0, 1000.0, 31), None, tol)?;
    Ok(Table {
        columns: vec!["q".into(), column.into()],
        rows: rows
            .iter()
            .filter_map(|row| row.critical_value().map(|c| vec![row.q.as_f64(), c]))
            .collect(),
    })
}

/// `(q, T_c)` for the squeezed thermal state with `r = 2`, q from 1 to 1000 then ∞.
pub fn figure_1(tol: f64) -> Result<Table> {
    sweep_table(&FIGURE_1_FAMILY, "T_c", tol)
}

/// `S_q(B|A)` against temperature for the beam-splitter state with `η = 4`.
pub fn figure_2() -> Result<Table> {
    let grid: Vec<f64> = (5..=200).map(|k| f64::from(k) / 10.0).collect();
    let mut orders = FIGURE_2_ORDERS
        .iter()
        .map(|&q| QIndex::new(q))
        .collect::<Result<Vec<_>>>()?;
    orders.push(QIndex::Infinite);

    let curves = orders
        .iter()
        .map(|&q| entropy_curve(&FIGURE_2_FAMILY, q, &grid))
        .collect::<Result<Vec<_>>>()?;
    let mut columns = vec!["T".to_string()];
    columns.extend(FIGURE_2_ORDERS.iter().map(|q| format!("S_{q}")));
    columns.push("W_inf".into());
    let rows = grid
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            std::iter::once(t)
                .chain(curves.iter().map(|c| c[i].1))
                .collect()
        })
        .collect();
    Ok(Table { columns, rows })
}

/// `(q, θ_c)` for the waveguide state with `r = 1.8`, `γ/𝒥 = 0.1`.
pub fn figure_3(tol: f64) -> Result<Table> {
    sweep_table(&FIGURE_3_FAMILY, "theta_c", tol)
}

pub fn figure(id: u8, tol: f64) -> Result<Table> {
    match id {
        1 => figure_1(tol),
        2 => figure_2(),
        3 => figure_3(tol),
        _ => Err(Error::InvalidParameter(format!(
            "no figure {id}; expected 1, 2 or 3"
        ))),
    }
}
