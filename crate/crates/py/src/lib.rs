//! Python bindings: states, spectra, criteria and thresholds.

use gsep_core::document;
use gsep_core::entropy::{conditional_q_entropy, QIndex};
use gsep_core::families::{
    beam_splitter_mix, squeezed_thermal, waveguide_state, BeamSplitterMixParams,
    SqueezedThermalParams, WaveguideParams,
};
use gsep_core::separability;
use gsep_core::state::ModePartition;
use gsep_core::symplectic::{Matrix, SymMatrix, SymplecticSpectrum};
use gsep_core::thresholds::{self, figures, Criterion, Family, ScanSpec};
use gsep_core::{Error, ErrorKind};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;

create_exception!(
    gsep,
    NoThresholdError,
    PyValueError,
    "The criterion never changes sign in range."
);
create_exception!(
    gsep,
    NumericalError,
    PyRuntimeError,
    "A numerical routine failed."
);

fn to_py(err: Error) -> PyErr {
    let msg = err.to_string();
    match err.kind() {
        ErrorKind::InvalidInput => PyValueError::new_err(msg),
        ErrorKind::NoThreshold => NoThresholdError::new_err(msg),
        ErrorKind::Numerical => NumericalError::new_err(msg),
    }
}

trait IntoPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for gsep_core::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// A float, or the string "inf".
fn q_index(q: &Bound<'_, PyAny>) -> PyResult<QIndex> {
    if let Ok(s) = q.cast::<PyString>() {
        return s.to_str()?.parse::<QIndex>().py_err();
    }
    let x: f64 = q.extract()?;
    if x.is_infinite() && x > 0.0 {
        Ok(QIndex::Infinite)
    } else {
        QIndex::new(x).py_err()
    }
}

fn partition(n_modes: usize, party_a: Option<Vec<usize>>) -> PyResult<ModePartition> {
    match party_a {
        Some(a) => {
            let b = (0..n_modes).filter(|k| !a.contains(k)).collect();
            ModePartition::new(a, b, n_modes).py_err()
        }
        None => ModePartition::first_vs_rest(n_modes).py_err(),
    }
}

fn json_to_py<'py>(py: Python<'py>, json: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (json,))
}

/// Covariance matrix of a Gaussian state, ordered (x1, p1, x2, p2, ...).
#[pyclass(
    name = "CovarianceMatrix",
    module = "gsep",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyCovarianceMatrix {
    inner: gsep_core::state::CovarianceMatrix,
}

impl From<gsep_core::state::CovarianceMatrix> for PyCovarianceMatrix {
    fn from(inner: gsep_core::state::CovarianceMatrix) -> Self {
        PyCovarianceMatrix { inner }
    }
}

#[pymethods]
impl PyCovarianceMatrix {
    /// Rejects matrices whose asymmetry exceeds the document tolerance.
    #[new]
    fn new(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        let raw = Matrix::from_rows(&rows).py_err()?;
        let max_asymmetry = raw.max_asymmetry();
        if max_asymmetry > document::MAX_ASYMMETRY {
            return Err(to_py(Error::Asymmetric { max_asymmetry }));
        }
        let sym = SymMatrix::new(raw).py_err()?;
        Ok(gsep_core::state::CovarianceMatrix::new(sym).into())
    }

    #[staticmethod]
    fn vacuum(n_modes: usize) -> PyResult<Self> {
        Ok(gsep_core::state::CovarianceMatrix::vacuum(n_modes)
            .py_err()?
            .into())
    }

    /// Parse a JSON covariance document. The partition, if any, is ignored here.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(document::parse(text).py_err()?.0.into())
    }

    #[staticmethod]
    #[pyo3(name = "squeezed_thermal")]
    fn py_squeezed_thermal(r: f64, temperature: f64) -> PyResult<Self> {
        let p = SqueezedThermalParams::new(r, temperature).py_err()?;
        Ok(squeezed_thermal(&p).py_err()?.into())
    }

    #[staticmethod]
    #[pyo3(name = "beam_splitter_mix")]
    fn py_beam_splitter_mix(eta: f64, temperature: f64) -> PyResult<Self> {
        let p = BeamSplitterMixParams::new(eta, temperature).py_err()?;
        Ok(beam_splitter_mix(&p).py_err()?.into())
    }

    #[staticmethod]
    fn waveguide(r: f64, gamma_over_j: f64, theta: f64) -> PyResult<Self> {
        let p = WaveguideParams::new(r, gamma_over_j, theta).py_err()?;
        Ok(waveguide_state(&p).py_err()?.into())
    }

    #[getter]
    fn n_modes(&self) -> usize {
        self.inner.n_modes()
    }

    fn matrix(&self) -> Vec<Vec<f64>> {
        self.inner.matrix().rows()
    }

    /// Symplectic eigenvalues, largest first.
    fn symplectic_spectrum(&self) -> PyResult<Vec<f64>> {
        Ok(self.inner.symplectic_spectrum().py_err()?.values().to_vec())
    }

    /// `(physical, min_nu)`; `min_nu` is None for an indefinite matrix.
    fn validate(&self) -> (bool, Option<f64>) {
        let v = self.inner.validate();
        (v.physical, v.min_nu)
    }

    fn reduce(&self, keep: Vec<usize>) -> PyResult<Self> {
        Ok(self.inner.reduce(&keep).py_err()?.into())
    }

    fn partial_transpose(&self, modes: Vec<usize>) -> PyResult<Self> {
        Ok(self.inner.partial_transpose(&modes).py_err()?.into())
    }

    #[pyo3(signature = (party_a=None))]
    fn to_json(&self, party_a: Option<Vec<usize>>) -> PyResult<String> {
        let p = match party_a {
            Some(a) => Some(partition(self.inner.n_modes(), Some(a))?),
            None => None,
        };
        Ok(document::to_json(&self.inner, p.as_ref()))
    }

    fn __repr__(&self) -> String {
        format!(
            "CovarianceMatrix(n_modes={}, matrix={:?})",
            self.inner.n_modes(),
            self.matrix()
        )
    }
}

/// `Tr ρ^q` for a state with the given symplectic spectrum.
#[pyfunction]
fn tr_rho_power(spectrum: Vec<f64>, q: f64) -> PyResult<f64> {
    let s = SymplecticSpectrum::new(spectrum).py_err()?;
    gsep_core::entropy::tr_rho_power(&s, q).py_err()
}

/// `S_q(B|A)`, or the witness `W_inf` when `q` is "inf".
#[pyfunction]
#[pyo3(signature = (state, q, party_a=None))]
fn conditional_entropy(
    state: PyRef<'_, PyCovarianceMatrix>,
    q: &Bound<'_, PyAny>,
    party_a: Option<Vec<usize>>,
) -> PyResult<f64> {
    let p = partition(state.inner.n_modes(), party_a)?;
    let (global, local) = separability::spectra(&state.inner, &p).py_err()?;
    let res = conditional_q_entropy(&global, &local, q_index(q)?).py_err()?;
    Ok(res.criterion_value())
}

/// Smallest symplectic eigenvalue after transposing party B.
#[pyfunction]
#[pyo3(signature = (state, party_a=None))]
fn ppt_min_symplectic(
    state: PyRef<'_, PyCovarianceMatrix>,
    party_a: Option<Vec<usize>>,
) -> PyResult<f64> {
    let p = partition(state.inner.n_modes(), party_a)?;
    separability::ppt_min_symplectic(&state.inner, &p).py_err()
}

#[pyfunction]
#[pyo3(signature = (state, party_a=None))]
fn log_negativity(
    state: PyRef<'_, PyCovarianceMatrix>,
    party_a: Option<Vec<usize>>,
) -> PyResult<f64> {
    let p = partition(state.inner.n_modes(), party_a)?;
    separability::log_negativity(&state.inner, &p).py_err()
}

/// Every criterion on one state, as a dict.
#[pyfunction]
#[pyo3(signature = (state, q=None, party_a=None))]
fn full_report<'py>(
    py: Python<'py>,
    state: PyRef<'_, PyCovarianceMatrix>,
    q: Option<Vec<Bound<'py, PyAny>>>,
    party_a: Option<Vec<usize>>,
) -> PyResult<Bound<'py, PyAny>> {
    let p = partition(state.inner.n_modes(), party_a)?;
    let q_list = match q {
        Some(items) => items.iter().map(q_index).collect::<PyResult<Vec<_>>>()?,
        None => vec![QIndex::VonNeumann, QIndex::Finite(2.0), QIndex::Infinite],
    };
    let report = separability::full_report(&state.inner, &p, &q_list).py_err()?;
    let json =
        serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &json)
}

fn family(
    name: &str,
    r: Option<f64>,
    eta: Option<f64>,
    gamma_over_j: Option<f64>,
) -> PyResult<Family> {
    let need = |v: Option<f64>, what: &str| {
        v.ok_or_else(|| PyValueError::new_err(format!("family {name:?} needs {what}")))
    };
    match name.replace('-', "_").as_str() {
        "squeezed_thermal" => Ok(Family::SqueezedThermal { r: need(r, "r")? }),
        "beam_splitter" | "beam_splitter_mix" => Ok(Family::BeamSplitterMix {
            eta: need(eta, "eta")?,
        }),
        "waveguide" => Ok(Family::Waveguide {
            r: need(r, "r")?,
            gamma_over_j: need(gamma_over_j, "gamma_over_j")?,
        }),
        _ => Err(PyValueError::new_err(format!("unknown family {name:?}"))),
    }
}

/// Critical temperature (or scaled time for the waveguide) where a criterion
/// changes sign. `criterion` is "q-entropy" or "ppt".
#[pyfunction]
#[pyo3(signature = (family_name, criterion="q-entropy", q=None, r=None, eta=None, gamma_over_j=None, bracket=None, tol=thresholds::DEFAULT_TOL))]
#[allow(clippy::too_many_arguments)]
fn threshold<'py>(
    py: Python<'py>,
    family_name: &str,
    criterion: &str,
    q: Option<Bound<'py, PyAny>>,
    r: Option<f64>,
    eta: Option<f64>,
    gamma_over_j: Option<f64>,
    bracket: Option<(f64, f64)>,
    tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let fam = family(family_name, r, eta, gamma_over_j)?;
    let criterion = match criterion {
        "q-entropy" | "q_entropy" => Criterion::QEntropy(match q {
            Some(q) => q_index(&q)?,
            None => QIndex::VonNeumann,
        }),
        "ppt" => Criterion::Ppt,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown criterion {other:?}"
            )))
        }
    };
    let mut spec = ScanSpec::new(fam, criterion).with_tol(tol);
    spec.bracket = bracket;
    let result = py.detach(|| thresholds::threshold(&spec)).py_err()?;
    let json =
        serde_json::to_string(&result).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &json)
}

/// CSV data behind figure 1, 2 or 3.
#[pyfunction]
#[pyo3(signature = (id, tol=thresholds::DEFAULT_TOL))]
fn figure_csv(py: Python<'_>, id: u8, tol: f64) -> PyResult<String> {
    Ok(py.detach(|| figures::figure(id, tol)).py_err()?.to_csv())
}

#[pymodule]
fn gsep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCovarianceMatrix>()?;
    m.add_function(wrap_pyfunction!(tr_rho_power, m)?)?;
    m.add_function(wrap_pyfunction!(conditional_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(ppt_min_symplectic, m)?)?;
    m.add_function(wrap_pyfunction!(log_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(full_report, m)?)?;
    m.add_function(wrap_pyfunction!(threshold, m)?)?;
    m.add_function(wrap_pyfunction!(figure_csv, m)?)?;
    m.add("NoThresholdError", m.py().get_type::<NoThresholdError>())?;
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    Ok(())
}
