//! Python bindings. Reports come back as plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use skewrank_core::exterior::{AlternatingTensor, TensorFile};
use skewrank_core::orbit::{self, Classification, OrbitLabel, SignatureTable};
use skewrank_core::scroll::{scroll_contact_experiment, ScrollOptions};
use skewrank_core::secant::{self, ContactOptions, Gr27Options, ScanOptions};
use skewrank_core::{Error, FieldContext as CoreContext, DEFAULT_PRIME, DEFAULT_SEED};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Genericity(_) | Error::Inconclusive(_) | Error::Resample { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Serializes through JSON so Python sees ordinary containers.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Prime field and seed shared by every randomized computation.
#[pyclass(frozen)]
struct Context {
    inner: CoreContext,
}

#[pymethods]
impl Context {
    #[new]
    #[pyo3(signature = (prime = DEFAULT_PRIME, seed = DEFAULT_SEED))]
    fn new(prime: u64, seed: u64) -> PyResult<Self> {
        Ok(Context {
            inner: CoreContext::new(prime, seed).map_err(py_err)?,
        })
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.inner.field.modulus()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    fn __repr__(&self) -> String {
        format!("Context(prime={}, seed={})", self.prime(), self.seed())
    }
}

/// `sigma_r(Gr(P^k, P^n))`.
#[pyclass(frozen)]
struct Case {
    inner: secant::GrassmannCase,
}

#[pymethods]
impl Case {
    #[new]
    fn new(k: usize, n: usize, r: usize) -> PyResult<Self> {
        Ok(Case {
            inner: secant::GrassmannCase::new(k, n, r).map_err(py_err)?,
        })
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r
    }

    #[getter]
    fn ambient(&self) -> usize {
        self.inner.ambient()
    }

    #[getter]
    fn grassmannian_dim(&self) -> usize {
        self.inner.grassmannian_dim()
    }

    #[getter]
    fn expected_dim(&self) -> usize {
        self.inner.expected_sigma_dim()
    }

    fn is_subgeneric(&self) -> bool {
        self.inner.is_subgeneric()
    }

    fn is_perfect(&self) -> bool {
        self.inner.is_perfect()
    }

    fn dual(&self) -> Case {
        Case { inner: self.inner.dual() }
    }

    fn __repr__(&self) -> String {
        format!("Case(k={}, n={}, r={})", self.inner.k, self.inner.n, self.inner.r)
    }
}

/// Alternating tensor in `∧^m F^d` with coefficients in lexicographic order.
#[pyclass]
struct Tensor {
    inner: AlternatingTensor,
}

#[pymethods]
impl Tensor {
    /// Reads the JSON tensor format.
    #[staticmethod]
    fn from_json(ctx: &Context, text: &str) -> PyResult<Self> {
        let file = TensorFile::parse(text).map_err(py_err)?;
        Ok(Tensor {
            inner: file.to_tensor(&ctx.inner.field).map_err(py_err)?,
        })
    }

    /// Normal form of an orbit, by Roman numeral.
    #[staticmethod]
    fn canonical(ctx: &Context, label: &str) -> PyResult<Self> {
        let label: OrbitLabel = label.parse().map_err(py_err)?;
        Ok(Tensor {
            inner: orbit::canonical_form(&ctx.inner.field, label),
        })
    }

    fn to_json(&self, ctx: &Context) -> String {
        TensorFile::from_tensor(&ctx.inner.field, &self.inner).to_json()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn ambient(&self) -> usize {
        self.inner.ambient()
    }

    #[getter]
    fn coeffs(&self) -> Vec<u64> {
        self.inner.coeffs().to_vec()
    }
}

#[pyfunction]
#[pyo3(signature = (ctx, case, trials = 3))]
fn terracini_dim(ctx: &Context, case: &Case, trials: usize) -> PyResult<usize> {
    Ok(secant::terracini_dim(&ctx.inner, case.inner, trials).map_err(py_err)?.value)
}

/// Modal Hessian kernel; `None` when the trials disagree.
#[pyfunction]
#[pyo3(signature = (ctx, case, trials = 3))]
fn contact_kernel(ctx: &Context, case: &Case, trials: usize) -> PyResult<Option<usize>> {
    let options = ContactOptions {
        trials,
        ..ContactOptions::default()
    };
    Ok(secant::contact_kernel_dim(&ctx.inner, case.inner, options).map_err(py_err)?.value)
}

#[pyfunction]
#[pyo3(signature = (ctx, nmax = 13, trials = 3))]
fn scan(py: Python<'_>, ctx: &Context, nmax: usize, trials: usize) -> PyResult<Py<PyAny>> {
    let options = ScanOptions {
        n_max: nmax,
        trials,
        ..ScanOptions::default()
    };
    let report = py
        .detach(|| secant::defectivity_scan(&ctx.inner, &options))
        .map_err(py_err)?;
    to_py(py, &report)
}

#[pyfunction]
fn oracle(py: Python<'_>, ctx: &Context) -> PyResult<Py<PyAny>> {
    let report = secant::gr27_oracle(&ctx.inner, Gr27Options::default()).map_err(py_err)?;
    to_py(py, &report)
}

#[pyfunction]
fn orbit_dim(ctx: &Context, tensor: &Tensor) -> PyResult<usize> {
    orbit::orbit_dim(&ctx.inner.field, &tensor.inner).map_err(py_err)
}

/// Affine dimension of the dual variety; `None` for the dense orbit.
#[pyfunction]
#[pyo3(signature = (ctx, tensor, trials = 3))]
fn dual_dim(ctx: &Context, tensor: &Tensor, trials: usize) -> PyResult<Option<usize>> {
    Ok(orbit::dual_cone_dim(&ctx.inner, &tensor.inner, trials)
        .map_err(py_err)?
        .value())
}

#[pyfunction]
#[pyo3(signature = (ctx, trials = 3))]
fn orbit_table(py: Python<'_>, ctx: &Context, trials: usize) -> PyResult<Py<PyAny>> {
    let records = orbit::orbit_table(&ctx.inner, trials).map_err(py_err)?;
    to_py(py, &records)
}

/// Orbit label of a three-form in eight variables, or the list of
/// candidates when signatures collide.
#[pyfunction]
#[pyo3(signature = (ctx, tensor, trials = 3))]
fn classify(py: Python<'_>, ctx: &Context, tensor: &Tensor, trials: usize) -> PyResult<Py<PyAny>> {
    let table = SignatureTable::build(&ctx.inner, trials).map_err(py_err)?;
    match table.classify(&ctx.inner, &tensor.inner, trials).map_err(py_err)? {
        Classification::Orbit(l) => to_py(py, &l),
        Classification::Ambiguous(ls) => to_py(py, &ls),
    }
}

#[pyfunction]
#[pyo3(signature = (ctx, checks = 50, negative_checks = 20))]
fn scroll_experiment(py: Python<'_>, ctx: &Context, checks: usize, negative_checks: usize) -> PyResult<Py<PyAny>> {
    let report = scroll_contact_experiment(&ctx.inner, ScrollOptions { checks, negative_checks }).map_err(py_err)?;
    to_py(py, &report)
}

#[pymodule]
fn skewrank(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Context>()?;
    m.add_class::<Case>()?;
    m.add_class::<Tensor>()?;
    m.add_function(wrap_pyfunction!(terracini_dim, m)?)?;
    m.add_function(wrap_pyfunction!(contact_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_dim, m)?)?;
    m.add_function(wrap_pyfunction!(dual_dim, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_table, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(scroll_experiment, m)?)?;
    Ok(())
}
