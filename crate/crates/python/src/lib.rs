use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use pbf_core::calculus::{apply_sequence, delta, join_derivative, meet_derivative, OpSequence};
use pbf_core::io::parse_table_text;
use pbf_core::permutability::{has_p_permutable_derivatives, max_permutability_degree};
use pbf_core::reconstruction::{profile_of, reconstruct};
use pbf_core::sweep::{run_sweep, SweepConfig};
use pbf_core::symmetric::{detect_symmetric, SymmetricSequence};
use pbf_core::{analyze, decompose, is_monotone, is_p_locally_monotone, local_monotonicity_degree};
use pbf_core::{FunctionTable, MultilinearPolynomial, Rational};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(err)
}

/// Accepts int, str ("3/4", "0.25"), float or fractions.Fraction.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?.to_string();
    Rational::parse_literal(text.trim()).map_err(err)
}

fn fraction<'py>(py: Python<'py>, v: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((v.to_string(),))
}

/// Truth table of a pseudo-Boolean function; index bit `k-1` is `x_k`.
#[pyclass(name = "Table", module = "pbf")]
struct Table {
    inner: FunctionTable,
}

fn wrap(inner: FunctionTable) -> Table {
    Table { inner }
}

#[pymethods]
impl Table {
    #[new]
    fn new(values: &Bound<'_, PyList>) -> PyResult<Self> {
        let values = values.iter().map(|v| rational(&v)).collect::<PyResult<Vec<_>>>()?;
        FunctionTable::from_values(values).map(wrap).map_err(err)
    }

    /// Table of a multilinear expression such as `"x1 - x1*x2 + x2*x3"`.
    #[staticmethod]
    #[pyo3(signature = (expr, arity=None))]
    fn from_expr(expr: &str, arity: Option<usize>) -> PyResult<Self> {
        let poly = match arity {
            Some(n) => MultilinearPolynomial::parse_with_arity(expr, n),
            None => MultilinearPolynomial::parse(expr),
        }
        .map_err(err)?;
        Ok(wrap(poly.to_table()))
    }

    /// Text format: arity, then the values.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_table_text(text).map(wrap).map_err(err)
    }

    /// Symmetric function from its values on weights `0..n`.
    #[staticmethod]
    fn from_sequence(values: &Bound<'_, PyList>) -> PyResult<Self> {
        let alpha = values.iter().map(|v| rational(&v)).collect::<PyResult<Vec<_>>>()?;
        Ok(wrap(SymmetricSequence::new(alpha).map_err(err)?.to_function()))
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    #[getter]
    fn values<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.values().iter().map(|v| fraction(py, v)).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.values().len()
    }

    fn __getitem__<'py>(&self, py: Python<'py>, index: usize) -> PyResult<Bound<'py, PyAny>> {
        match self.inner.values().get(index) {
            Some(v) => fraction(py, v),
            None => Err(pyo3::exceptions::PyIndexError::new_err("index out of range")),
        }
    }

    fn __repr__(&self) -> String {
        format!("Table({})", self.inner)
    }

    fn __eq__(&self, other: PyRef<'_, Table>) -> bool {
        self.inner == other.inner
    }

    fn polynomial(&self) -> String {
        MultilinearPolynomial::from_table(&self.inner).to_string()
    }

    fn delta(&self, k: usize) -> PyResult<Table> {
        delta(&self.inner, k).map(wrap).map_err(err)
    }

    fn meet(&self, k: usize) -> PyResult<Table> {
        meet_derivative(&self.inner, k).map(wrap).map_err(err)
    }

    fn join(&self, k: usize) -> PyResult<Table> {
        join_derivative(&self.inner, k).map(wrap).map_err(err)
    }

    /// Applies an operator sequence such as `"v2 ^1"`, rightmost first.
    fn apply(&self, ops: &str) -> PyResult<Table> {
        let seq: OpSequence = ops.parse().map_err(err)?;
        apply_sequence(&self.inner, &seq).map(wrap).map_err(err)
    }

    fn is_monotone(&self) -> bool {
        is_monotone(&self.inner)
    }

    fn is_p_locally_monotone(&self, p: usize) -> PyResult<bool> {
        Ok(is_p_locally_monotone(&self.inner, p).map_err(err)?.holds)
    }

    fn local_monotonicity_degree(&self) -> usize {
        local_monotonicity_degree(&self.inner).degree
    }

    fn has_p_permutable_derivatives(&self, p: usize) -> PyResult<bool> {
        Ok(has_p_permutable_derivatives(&self.inner, p).map_err(err)?.holds)
    }

    fn permutability_degree(&self) -> PyResult<usize> {
        Ok(max_permutability_degree(&self.inner).map_err(err)?.max_p)
    }

    /// Values on weights `0..n` if the function is symmetric.
    fn symmetric_sequence<'py>(&self, py: Python<'py>) -> PyResult<Option<Vec<Bound<'py, PyAny>>>> {
        detect_symmetric(&self.inner)
            .map(|s| s.alpha().iter().map(|v| fraction(py, v)).collect())
            .transpose()
    }

    /// Full analysis as a JSON string.
    fn analyze(&self) -> PyResult<String> {
        to_json(&analyze("python", &self.inner))
    }

    /// Decomposition summary as JSON, or None when not monotone.
    fn decompose(&self) -> PyResult<Option<String>> {
        decompose(&self.inner).map(|d| to_json(&d.summary())).transpose()
    }

    /// Reconstruction from the derivative profile, as JSON.
    fn reconstruct_from_profile(&self) -> PyResult<String> {
        let profile = profile_of(&self.inner).map_err(err)?;
        to_json(&reconstruct(&profile))
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }
}

/// Staircase sequence `0,0,1^p,0^p,1,1`.
#[pyfunction]
fn staircase<'py>(py: Python<'py>, p: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let s = pbf_core::staircase(p).map_err(err)?;
    s.alpha().iter().map(|v| fraction(py, v)).collect()
}

/// Runs sweep claims (all when `claims` is empty); returns JSON.
#[pyfunction]
#[pyo3(signature = (claims=Vec::new(), max_arity=3, samples=100, seed=0))]
fn sweep(claims: Vec<String>, max_arity: usize, samples: usize, seed: u64) -> PyResult<String> {
    let config = SweepConfig {
        min_arity: 1,
        max_arity,
        samples,
        seed,
    };
    to_json(&run_sweep(&claims, &config).map_err(err)?)
}

#[pymodule]
fn pbf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Table>()?;
    m.add_function(wrap_pyfunction!(staircase, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
