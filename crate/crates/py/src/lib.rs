//! Python bindings: `import mscalg`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use msc_core::automorphisms::{are_isomorphic, decide_trivial_aut, is_automorphism, DEFAULT_BUDGET};
use msc_core::classify2d::audit::audit_completeness;
use msc_core::classify2d::{match_family, Property};
use msc_core::construct::{chain, seed2, ChainMode, ChainOptions, SeedParams};
use msc_core::derivations::{derivation_report, is_derivation, is_trivial_der};
use msc_core::experiments::{density_scan, inclusion_scan, Samples, ScanOptions};
use msc_core::simplicity::decide_simple;
use msc_core::{Error, FieldSpec, LinMap, Mat, Scalar};

create_exception!(mscalg, BudgetExceeded, PyException);

fn err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn field_of(s: &str) -> PyResult<FieldSpec> {
    s.parse().map_err(err)
}

/// Serializable value as plain Python objects, through `json.loads`.
fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).expect("serializable");
    py.import("json")?.call_method1("loads", (text,))
}

fn scalars(field: FieldSpec, items: &[Bound<'_, PyAny>]) -> PyResult<Vec<Scalar>> {
    items
        .iter()
        .map(|x| field.parse_scalar(&x.str()?.to_string()).map_err(err))
        .collect()
}

fn matrix(field: FieldSpec, rows: &[Vec<Bound<'_, PyAny>>]) -> PyResult<Mat> {
    let rows = rows
        .iter()
        .map(|r| scalars(field, r))
        .collect::<PyResult<Vec<_>>>()?;
    Mat::from_rows(field, rows).map_err(err)
}

fn linmap(field: FieldSpec, rows: &[Vec<Bound<'_, PyAny>>]) -> PyResult<LinMap> {
    LinMap::new(matrix(field, rows)?).map_err(err)
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Structure constants of an algebra: row `k`, column `i*n + j` holds the
/// coefficient of `e_k` in `e_i e_j`. Entries are ints or strings like "1/2".
#[pyclass(name = "Msc", module = "mscalg", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMsc {
    inner: msc_core::Msc,
}

#[pymethods]
impl PyMsc {
    #[new]
    #[pyo3(signature = (entries, field = "Q"))]
    fn new(entries: Vec<Vec<Bound<'_, PyAny>>>, field: &str) -> PyResult<Self> {
        let f = field_of(field)?;
        let inner = msc_core::Msc::new(matrix(f, &entries)?).map_err(err)?;
        Ok(PyMsc { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyMsc {
            inner: msc_core::Msc::from_json_str(text).map_err(err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (n, field = "Q"))]
    fn diagonal_idempotent(n: usize, field: &str) -> PyResult<Self> {
        Ok(PyMsc {
            inner: msc_core::Msc::diagonal_idempotent(field_of(field)?, n),
        })
    }

    #[staticmethod]
    #[pyo3(signature = (c, field = "Q"))]
    fn seed2(c: Vec<Bound<'_, PyAny>>, field: &str) -> PyResult<Self> {
        let f = field_of(field)?;
        let p = seed_params(f, &c)?;
        Ok(PyMsc {
            inner: seed2(&p, f).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    #[getter]
    fn entries(&self) -> Vec<Vec<String>> {
        self.inner.entries().to_strings()
    }

    fn multiply(&self, u: Vec<Bound<'_, PyAny>>, v: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        let f = self.inner.field();
        let w = self
            .inner
            .multiply(&scalars(f, &u)?, &scalars(f, &v)?)
            .map_err(err)?;
        Ok(strings(&w))
    }

    /// `g A (g^-1 ⊗ g^-1)`.
    fn change_basis(&self, g: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let g = linmap(self.inner.field(), &g)?;
        Ok(PyMsc {
            inner: self.inner.change_basis(&g).map_err(err)?,
        })
    }

    fn is_trivial_der(&self) -> bool {
        is_trivial_der(&self.inner)
    }

    fn derivations<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &derivation_report(&self.inner))
    }

    fn is_derivation(&self, d: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<bool> {
        let d = linmap(self.inner.field(), &d)?;
        is_derivation(&self.inner, &d).map_err(err)
    }

    fn is_automorphism(&self, g: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<bool> {
        let g = linmap(self.inner.field(), &g)?;
        is_automorphism(&self.inner, &g).map_err(err)
    }

    #[pyo3(signature = (budget = DEFAULT_BUDGET))]
    fn automorphisms<'py>(&self, py: Python<'py>, budget: u128) -> PyResult<Bound<'py, PyAny>> {
        let v = py.detach(|| decide_trivial_aut(&self.inner, budget));
        to_py(py, &v.report())
    }

    fn simplicity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let v = py.detach(|| decide_simple(&self.inner));
        to_py(py, &v.report())
    }

    /// Some `g` with `self.change_basis(g) == other`, or `None`. GF(p) only.
    #[pyo3(signature = (other, budget = DEFAULT_BUDGET))]
    fn isomorphism(&self, py: Python<'_>, other: &PyMsc, budget: u128) -> PyResult<Option<Vec<Vec<String>>>> {
        let g = py
            .detach(|| are_isomorphic(&self.inner, &other.inner, budget))
            .map_err(err)?;
        Ok(g.map(|g| g.to_strings()))
    }

    /// Labels of the classification-table instances equal to this MSC.
    fn classify(&self, property: &str) -> PyResult<Vec<String>> {
        let p: Property = property.parse().map_err(err)?;
        let hits = match_family(&self.inner, p).map_err(err)?;
        Ok(hits.into_iter().map(|i| i.label).collect())
    }

    fn __repr__(&self) -> String {
        format!("Msc(n={}, field={}, entries={:?})", self.inner.dim(), self.inner.field(), self.entries())
    }
}

fn seed_params(f: FieldSpec, c: &[Bound<'_, PyAny>]) -> PyResult<SeedParams> {
    let [alpha1, alpha2, alpha4, beta1]: [Scalar; 4] = scalars(f, c)?
        .try_into()
        .map_err(|_| PyValueError::new_err("seed needs four parameters"))?;
    Ok(SeedParams {
        alpha1,
        alpha2,
        alpha4,
        beta1,
    })
}

fn samples_of(samples: Option<u64>) -> Samples {
    samples.map_or(Samples::Exhaustive, Samples::Count)
}

/// Chain of algebras grown from `seed2(c)`; a list of stage dicts with an
/// extra `"algebra"` key holding the `Msc`.
#[pyfunction]
#[pyo3(signature = (c, field, target_n, seed, mode = "trivial"))]
fn construct<'py>(
    py: Python<'py>,
    c: Vec<Bound<'py, PyAny>>,
    field: &str,
    target_n: usize,
    seed: u64,
    mode: &str,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let f = field_of(field)?;
    let p = seed_params(f, &c)?;
    let mode = match mode {
        "trivial" => ChainMode::TrivialOnly,
        "simple" => ChainMode::SimpleToo,
        m => return Err(PyValueError::new_err(format!("unknown mode {m:?}"))),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stages = py
        .detach(|| chain(&p, f, target_n, mode, &mut rng, &ChainOptions::default()))
        .map_err(err)?;
    stages
        .iter()
        .map(|s| {
            let d = to_py(py, s)?;
            d.set_item("algebra", PyMsc { inner: s.algebra.clone() })?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn audit<'py>(py: Python<'py>, field: &str, property: &str) -> PyResult<Bound<'py, PyAny>> {
    let f = field_of(field)?;
    let p: Property = property.parse().map_err(err)?;
    let r = py.detach(|| audit_completeness(f, p)).map_err(err)?;
    to_py(py, &r)
}

/// `samples=None` scans every MSC.
#[pyfunction]
#[pyo3(signature = (field, n = 2, samples = None, seed = 0))]
fn density<'py>(
    py: Python<'py>,
    field: &str,
    n: usize,
    samples: Option<u64>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let f = field_of(field)?;
    let r = py
        .detach(|| density_scan(f, n, samples_of(samples), seed, &ScanOptions::default()))
        .map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (field, samples = None, seed = 0))]
fn inclusion<'py>(
    py: Python<'py>,
    field: &str,
    samples: Option<u64>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let f = field_of(field)?;
    let r = py
        .detach(|| inclusion_scan(f, samples_of(samples), seed, &ScanOptions::default()))
        .map_err(err)?;
    to_py(py, &r)
}

#[pymodule]
fn mscalg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMsc>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(inclusion, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    Ok(())
}
