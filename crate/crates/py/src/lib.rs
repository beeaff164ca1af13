//! Python module `qnc`: construct members of the family, verify them and run
//! the probes. Reports come back as dicts with the same layout as the JSON
//! written by the command-line tool.

use std::path::PathBuf;

use num_complex::Complex;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use qnc_core::analysis::{lemma2_probe as lemma2, marty_probe as marty, GridSpec, Quantity, Region};
use qnc_core::cpoly::ComplexValue;
use qnc_core::dynamic::{self, AnyFunction, SweepOptions};
use qnc_core::forge::{ConstructionConfig, ForgeError, DEFAULT_GRID, DEFAULT_SEED, NODE_TOL};
use qnc_core::io::FunctionFile;

type C = ComplexValue<f64>;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_c(z: Complex<f64>) -> C {
    C::new(z.re, z.im)
}

fn to_py(z: &C) -> Complex<f64> {
    Complex::new(z.re, z.im)
}

/// Serializes through JSON so the dict matches the CLI report layout.
fn to_dict<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// One member `f_n = a(zⁿ − 1)e^{p(z)}` of the family.
#[pyclass(name = "Function", module = "qnc", frozen)]
struct PyFunction {
    inner: AnyFunction,
}

#[pymethods]
impl PyFunction {
    /// Builds `f_n`; `precision` other than 53 selects multiprecision.
    #[staticmethod]
    #[pyo3(signature = (n, precision=53, grid=DEFAULT_GRID))]
    fn construct(n: u32, precision: u32, grid: u32) -> PyResult<Self> {
        let config = ConstructionConfig {
            precision_bits: precision,
            grid,
            seed: DEFAULT_SEED,
        };
        let inner = AnyFunction::construct(n, &config).map_err(value_error)?;
        Ok(PyFunction { inner })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        let file = FunctionFile::load(&path).map_err(value_error)?;
        let inner = AnyFunction::from_file(&file).map_err(value_error)?;
        Ok(PyFunction { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file = FunctionFile::from_json(text).map_err(value_error)?;
        let inner = AnyFunction::from_file(&file).map_err(value_error)?;
        Ok(PyFunction { inner })
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        self.inner.to_file().save(&path).map_err(value_error)
    }

    fn to_json(&self) -> String {
        self.inner.to_file().to_json()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn precision_bits(&self) -> u32 {
        self.inner.precision_bits()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// `a`, `c_hat` and `m_hat` as exact decimal strings; they may lie far
    /// outside the float range.
    #[getter]
    fn a(&self) -> String {
        self.inner.a().to_decimal()
    }

    #[getter]
    fn c_hat(&self) -> String {
        self.inner.c_hat().to_decimal()
    }

    #[getter]
    fn m_hat(&self) -> String {
        self.inner.m_hat().to_decimal()
    }

    #[getter]
    fn ln_a(&self) -> f64 {
        self.inner.a().ln()
    }

    fn nodes(&self) -> Vec<Complex<f64>> {
        self.inner.nodes().iter().map(to_py).collect()
    }

    /// Monomial coefficients of `p`, constant term first.
    fn p_coeffs(&self) -> Vec<Complex<f64>> {
        self.inner.p_monomial().iter().map(to_py).collect()
    }

    fn p(&self, z: Complex<f64>) -> Complex<f64> {
        to_py(&self.inner.p_eval(&to_c(z)))
    }

    /// `[f(z), f′(z), …, f^{(order)}(z)]`; raises OverflowError when an entry
    /// leaves the float range.
    #[pyo3(signature = (z, order=2))]
    fn f_jet(&self, z: Complex<f64>, order: usize) -> PyResult<Vec<Complex<f64>>> {
        match self.inner.f_jet(&to_c(z), order) {
            Ok(jet) => Ok(jet.values().iter().map(to_py).collect()),
            Err(e @ ForgeError::Overflow { .. }) => Err(PyOverflowError::new_err(e.to_string())),
            Err(e) => Err(value_error(e)),
        }
    }

    fn node_residual(&self, l: usize) -> PyResult<f64> {
        if l >= self.inner.n() as usize {
            return Err(value_error(format!("node index {l} out of range")));
        }
        Ok(self.inner.node_residual(l))
    }

    /// Raises ValueError when an invariant of the record fails.
    fn validate(&self) -> PyResult<()> {
        self.inner.validate().map_err(value_error)
    }

    #[pyo3(signature = (samples=10_000, tol=1e-12, seed=DEFAULT_SEED))]
    fn verify_inequality<'py>(&self, py: Python<'py>, samples: usize, tol: f64, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &self.inner.verify_inequality(samples, tol, seed))
    }

    #[pyo3(signature = (tol=NODE_TOL))]
    fn verify_node_jets<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &self.inner.verify_node_jets(tol))
    }

    #[pyo3(signature = (resolution=512))]
    fn max_modulus_check<'py>(&self, py: Python<'py>, resolution: u32) -> PyResult<Bound<'py, PyAny>> {
        let report = self.inner.max_modulus_check(resolution).map_err(value_error)?;
        to_dict(py, &report)
    }

    /// `[(z, ln value)]` of `what` ("ratio", "fk" or "sphder") over a grid
    /// on `region` ("disk:R", "circle:R" or "annulus:R1:R2").
    fn grid(&self, what: &str, region: &str, resolution: u32) -> PyResult<Vec<(Complex<f64>, f64)>> {
        let what: Quantity = what.parse().map_err(value_error)?;
        let region: Region = region.parse().map_err(value_error)?;
        let grid = GridSpec::new(region, resolution).map_err(value_error)?;
        Ok(self
            .inner
            .grid_log_values(what, &grid)
            .into_iter()
            .map(|(z, v)| (to_py(&z), v))
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Function(n={}, precision_bits={}, degree={}, a={})",
            self.inner.n(),
            self.inner.precision_bits(),
            self.inner.degree(),
            self.inner.a()
        )
    }
}

fn members(fs: Vec<PyRef<'_, PyFunction>>) -> Vec<AnyFunction> {
    fs.iter().map(|f| f.inner.clone()).collect()
}

/// Supremum of the spherical derivative near `center` on the unit circle for
/// each member, with verdict "blowup" or "bounded".
#[pyfunction]
#[pyo3(signature = (fs, center=Complex::new(1.0, 0.0), radius=0.1))]
fn marty_probe<'py>(
    py: Python<'py>,
    fs: Vec<PyRef<'py, PyFunction>>,
    center: Complex<f64>,
    radius: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let result = marty(&members(fs), &to_c(center), radius).map_err(value_error)?;
    to_dict(py, &result)
}

/// `|f^{(ℓ)}/f^{ℓ+1}|` per member, point and order, with verdict "decay" or
/// "no-decay".
#[pyfunction]
#[pyo3(signature = (fs, points=vec![Complex::new(0.0, 0.0)], orders=vec![2]))]
fn lemma2_probe<'py>(
    py: Python<'py>,
    fs: Vec<PyRef<'py, PyFunction>>,
    points: Vec<Complex<f64>>,
    orders: Vec<u32>,
) -> PyResult<Bound<'py, PyAny>> {
    let points: Vec<C> = points.into_iter().map(to_c).collect();
    let result = lemma2(&members(fs), &points, &orders).map_err(value_error)?;
    to_dict(py, &result)
}

/// Constructs and verifies `f_first..=f_last`.
#[pyfunction]
#[pyo3(signature = (first, last, precision=53, grid=DEFAULT_GRID, samples=10_000, tol=1e-12, resolution=512))]
fn sweep<'py>(
    py: Python<'py>,
    first: u32,
    last: u32,
    precision: u32,
    grid: u32,
    samples: usize,
    tol: f64,
    resolution: u32,
) -> PyResult<Bound<'py, PyAny>> {
    if first == 0 || first > last {
        return Err(value_error(format!("invalid range {first}..{last}")));
    }
    let options = SweepOptions {
        construction: ConstructionConfig {
            precision_bits: precision,
            grid,
            seed: DEFAULT_SEED,
        },
        samples,
        tol,
        resolution,
    };
    let outcome = py.detach(|| dynamic::sweep(first..=last, &options));
    to_dict(py, &outcome)
}

#[pymodule]
fn qnc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFunction>()?;
    m.add_function(wrap_pyfunction!(marty_probe, m)?)?;
    m.add_function(wrap_pyfunction!(lemma2_probe, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add("NODE_TOL", NODE_TOL)?;
    Ok(())
}
