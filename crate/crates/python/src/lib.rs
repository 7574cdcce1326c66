//! Python bindings for the `nmwit` witness library.

use std::f64::consts::PI;

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nmwit::decoherence::{self, OhmicSpectralDensity, SqueezedBathParams, ThermalBathParams};
use nmwit::dynamics::{self, EnvironmentModel, InitialState, Spin, SpinLayout};
use nmwit::hilbert::{ComplexMatrix, DensityMatrix};
use nmwit::runner;
use nmwit::witnesses::{self, CorrelationTopology, WitnessSeries};

fn py_err(e: nmwit::Error) -> PyErr {
    if e.exit_code() == 2 {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn density(rows: Vec<Vec<Complex64>>, dims: Vec<usize>) -> PyResult<DensityMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    let m = ComplexMatrix::from_fn(n, |i, j| rows[i][j]).map_err(py_err)?;
    DensityMatrix::new(m, dims).map_err(py_err)
}

fn series_dict<'py>(py: Python<'py>, s: &WitnessSeries) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("tau", &s.tau_grid)?;
    d.set_item("hss", &s.hss)?;
    d.set_item("chi", &s.chi)?;
    d.set_item("negativity", &s.negativity)?;
    d.set_item("mid", &s.mid)?;
    d.set_item("nonmarkov_intervals", &s.nonmarkov_intervals)?;
    Ok(d)
}

/// Telegraph-noise average `D_n(τ)` in closed form.
#[pyfunction]
fn rtn_dn(n: u32, q: f64, tau: f64) -> PyResult<f64> {
    decoherence::rtn_dn(n, q, tau).map_err(py_err)
}

/// Monte-Carlo `D_n(τ)`; returns `(mean, stderr, trials)`.
#[pyfunction]
#[pyo3(signature = (n, q, tau, trials = 100_000, seed = 0))]
fn rtn_dn_montecarlo(n: u32, q: f64, tau: f64, trials: usize, seed: u64) -> PyResult<(f64, f64, usize)> {
    let e = decoherence::rtn_dn_montecarlo(n, q, tau, trials, seed).map_err(py_err)?;
    Ok((e.mean, e.stderr, e.trials))
}

#[pyfunction]
#[pyo3(signature = (t, alpha, s_ohmic, omega_c, temperature = 0.0))]
fn gamma_thermal(t: f64, alpha: f64, s_ohmic: f64, omega_c: f64, temperature: f64) -> PyResult<f64> {
    let params = ThermalBathParams {
        spectral: OhmicSpectralDensity::new(alpha, s_ohmic, omega_c).map_err(py_err)?,
        temperature,
    };
    decoherence::gamma_thermal(t, &params).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (t, alpha, s_ohmic, omega_c, r, theta = 0.0))]
fn gamma_squeezed(t: f64, alpha: f64, s_ohmic: f64, omega_c: f64, r: f64, theta: f64) -> PyResult<f64> {
    let params = SqueezedBathParams {
        spectral: OhmicSpectralDensity::new(alpha, s_ohmic, omega_c).map_err(py_err)?,
        r,
        theta,
    };
    decoherence::gamma_squeezed(t, &params).map_err(py_err)
}

#[pyfunction]
fn hss_qudit_closed(spin: f64, gamma: f64) -> PyResult<f64> {
    let s = Spin::try_from(spin).map_err(py_err)?;
    Ok(witnesses::hss_qudit_closed(s, gamma))
}

#[pyfunction]
fn chi_qudit_closed(spin: f64, gamma: f64, dgamma_dt: f64) -> PyResult<f64> {
    let s = Spin::try_from(spin).map_err(py_err)?;
    Ok(witnesses::chi_qudit_closed(s, gamma, dgamma_dt))
}

/// Negativity of a bipartite density matrix given as nested lists.
#[pyfunction]
fn negativity(rho: Vec<Vec<Complex64>>, dims: Vec<usize>) -> PyResult<f64> {
    witnesses::negativity(&density(rho, dims)?).map_err(py_err)
}

/// Measurement-induced disturbance of a bipartite density matrix.
#[pyfunction]
fn mid(rho: Vec<Vec<Complex64>>, dims: Vec<usize>) -> PyResult<f64> {
    witnesses::mid(&density(rho, dims)?).map_err(py_err)
}

fn topology(common: bool) -> CorrelationTopology {
    if common {
        CorrelationTopology::Common
    } else {
        CorrelationTopology::Independent
    }
}

#[pyfunction]
#[pyo3(signature = (p, f, common = false))]
fn negativity_closed(p: f64, f: f64, common: bool) -> f64 {
    witnesses::negativity_closed(p, f, topology(common))
}

#[pyfunction]
#[pyo3(signature = (p, f, common = false))]
fn mid_closed(p: f64, f: f64, common: bool) -> f64 {
    witnesses::mid_closed(p, f, topology(common))
}

/// Spin layout plus environment; the environment is a JSON object with a
/// `kind` tag, e.g. `{"kind": "rtn_independent", "nu": 1, "gamma_rate": 0.1}`.
#[pyclass(name = "Scenario", module = "pynmwit")]
struct PyScenario {
    inner: dynamics::Scenario,
}

#[pymethods]
impl PyScenario {
    #[new]
    fn new(spins: Vec<f64>, environment: &str) -> PyResult<Self> {
        let spins = spins
            .into_iter()
            .map(Spin::try_from)
            .collect::<nmwit::Result<Vec<_>>>()
            .map_err(py_err)?;
        let env: EnvironmentModel =
            serde_json::from_str(environment).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let layout = SpinLayout::new(spins).map_err(py_err)?;
        Ok(Self {
            inner: dynamics::Scenario::new(layout, env).map_err(py_err)?,
        })
    }

    /// Scenario of a figure preset.
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        let cfg = runner::Preset::from_name(name).map_err(py_err)?.config();
        Ok(Self {
            inner: cfg.scenario().map_err(py_err)?,
        })
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.layout.dims()
    }

    /// Decoherence exponent γ and `D_n` values at scaled time `tau`.
    fn environment_state(&self, tau: f64) -> PyResult<(f64, Vec<f64>)> {
        let env = self.inner.environment_state(tau).map_err(py_err)?;
        Ok((env.gamma, env.dn))
    }

    /// Evolved pure phase state as nested lists.
    #[pyo3(signature = (tau, phi = PI))]
    fn evolve_pure(&self, tau: f64, phi: f64) -> PyResult<Vec<Vec<Complex64>>> {
        let rho = dynamics::evolve(&self.inner, &InitialState::PurePhase { phi }, tau)
            .and_then(|e| e.state())
            .map_err(py_err)?;
        Ok(to_rows(rho.matrix()))
    }

    /// Evolved mixed qubit-qutrit state with mixing parameter `p`.
    fn evolve_mixed(&self, tau: f64, p: f64) -> PyResult<Vec<Vec<Complex64>>> {
        let rho = dynamics::evolve(&self.inner, &InitialState::MixedP { p }, tau)
            .and_then(|e| e.state())
            .map_err(py_err)?;
        Ok(to_rows(rho.matrix()))
    }

    /// Hilbert-Schmidt speed of the pure phase state at `tau`.
    #[pyo3(signature = (tau, phi = PI))]
    fn hss(&self, tau: f64, phi: f64) -> PyResult<f64> {
        match dynamics::evolve(&self.inner, &InitialState::PurePhase { phi }, tau).map_err(py_err)? {
            dynamics::Evolved::Family(f) => Ok(witnesses::hss(&f)),
            dynamics::Evolved::State(_) => Err(PyRuntimeError::new_err("expected a phase family")),
        }
    }

    /// HSS, χ, negativity and MID on `tau_grid`. Correlations use the mixed
    /// state when `p` is given, else the pure state.
    #[pyo3(signature = (tau_grid, phi = PI, p = None))]
    fn witness_series<'py>(
        &self,
        py: Python<'py>,
        tau_grid: Vec<f64>,
        phi: f64,
        p: Option<f64>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let initial = match p {
            Some(p) => InitialState::MixedP { p },
            None => InitialState::PurePhase { phi },
        };
        let s = py
            .detach(|| witnesses::witness_series(&self.inner, phi, &initial, &tau_grid))
            .map_err(py_err)?;
        series_dict(py, &s)
    }
}

/// Run a preset (optionally on a coarser grid) and return its series as
/// dicts with an added `p` key.
#[pyfunction]
#[pyo3(signature = (name, grid_points = None, out_dir = None))]
fn run_preset<'py>(
    py: Python<'py>,
    name: &str,
    grid_points: Option<usize>,
    out_dir: Option<std::path::PathBuf>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let mut cfg = runner::Preset::from_name(name).map_err(py_err)?.config();
    if let Some(n) = grid_points {
        cfg.grid_points = n;
    }
    let result = py
        .detach(|| {
            let result = runner::execute(&cfg)?;
            if let Some(dir) = &out_dir {
                runner::write_outputs(&result, dir)?;
            }
            Ok(result)
        })
        .map_err(py_err)?;
    result
        .series
        .iter()
        .map(|s| {
            let d = series_dict(py, &s.series)?;
            d.set_item("p", s.p)?;
            d.set_item("misaligned_extrema", s.extrema.misaligned().len())?;
            Ok(d)
        })
        .collect()
}

/// Run the self-check suites; returns `(passed, report)`.
#[pyfunction]
fn validate(py: Python<'_>) -> PyResult<(bool, String)> {
    let report = py.detach(runner::validate::validate).map_err(py_err)?;
    Ok((report.passed(), report.to_string()))
}

#[pymodule]
fn pynmwit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(rtn_dn, m)?)?;
    m.add_function(wrap_pyfunction!(rtn_dn_montecarlo, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_thermal, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_squeezed, m)?)?;
    m.add_function(wrap_pyfunction!(hss_qudit_closed, m)?)?;
    m.add_function(wrap_pyfunction!(chi_qudit_closed, m)?)?;
    m.add_function(wrap_pyfunction!(negativity, m)?)?;
    m.add_function(wrap_pyfunction!(mid, m)?)?;
    m.add_function(wrap_pyfunction!(negativity_closed, m)?)?;
    m.add_function(wrap_pyfunction!(mid_closed, m)?)?;
    m.add_function(wrap_pyfunction!(run_preset, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_class::<PyScenario>()?;
    Ok(())
}
