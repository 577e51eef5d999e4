//! Python bindings: polynomials, power sums, triple search and the
//! bound checks. Structured results come back as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

use powersum_core::algebra::{is_square_polynomial, poly_sqrt, squarefree_part, Polynomial};
use powersum_core::bounds::{gcd_bound, growth_check, ConstantLedger};
use powersum_core::degenerate::{canonical_counterexample, planted_triples};
use powersum_core::expansion::{certify_square, Expansion};
use powersum_core::function_field::{lemma1_property_suite, sum_formula_suite};
use powersum_core::io::{parse_polynomial, parse_spec, poly_to_json, spec_to_json};
use powersum_core::power_sum::{reference_sequence, PowerSum};
use powersum_core::sampling;
use powersum_core::search::search;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

#[pyclass(name = "Polynomial", module = "powersum", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPolynomial(Polynomial);

#[pymethods]
impl PyPolynomial {
    /// Accepts `"X^2 + 3*X - 1/2"` or a JSON coefficient list, low degree first.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_polynomial(text).map(Self).map_err(err)
    }

    fn degree(&self) -> Option<i64> {
        self.0.degree().finite()
    }

    /// Coefficients as exact rational strings, low degree first.
    fn coefficients(&self) -> Vec<String> {
        self.0.coeffs().iter().map(ToString::to_string).collect()
    }

    fn is_square(&self) -> PyResult<bool> {
        is_square_polynomial(&self.0).map_err(err)
    }

    fn sqrt(&self) -> PyResult<Self> {
        poly_sqrt(&self.0).map(Self).map_err(err)
    }

    fn squarefree_part(&self) -> PyResult<Self> {
        squarefree_part(&self.0).map(Self).map_err(err)
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }
}

/// A power sum `sum f_i a_i^n` together with its shift `p`.
#[pyclass(name = "PowerSum", module = "powersum", frozen)]
struct PyPowerSum {
    seq: PowerSum,
    p: Polynomial,
}

impl PyPowerSum {
    fn shift(&self, p: Option<&PyPolynomial>) -> Polynomial {
        p.map_or_else(|| self.p.clone(), |p| p.0.clone())
    }
}

#[pymethods]
impl PyPowerSum {
    /// Parses a sequence spec document. A missing `p` means 0.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec = parse_spec(text).map_err(err)?;
        Ok(Self {
            seq: spec.seq,
            p: spec.p.unwrap_or_else(Polynomial::zero),
        })
    }

    /// `X * (X^2)^n + 1 * X^n` with `p = 1`.
    #[staticmethod]
    fn reference() -> Self {
        Self {
            seq: reference_sequence(),
            p: Polynomial::one(),
        }
    }

    /// The degenerate order-6 sequence with `p = 1`.
    #[staticmethod]
    fn counterexample() -> Self {
        Self {
            seq: canonical_counterexample().g,
            p: Polynomial::one(),
        }
    }

    fn to_json(&self) -> String {
        spec_to_json(&self.seq, Some(&self.p)).to_string()
    }

    fn order(&self) -> usize {
        self.seq.order()
    }

    #[getter]
    fn p(&self) -> PyPolynomial {
        PyPolynomial(self.p.clone())
    }

    /// `G_n`, which must be a polynomial.
    fn value(&self, n: u64) -> PyResult<PyPolynomial> {
        self.seq
            .evaluate_polynomial(n)
            .map(PyPolynomial)
            .ok_or_else(|| err(format!("G_{n} is not a polynomial")))
    }

    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let hyp = self.seq.check_hypotheses();
        let constants = self.seq.constants(&self.p).ok();
        to_py(py, &json!({"pass": hyp.pass, "hypotheses": hyp, "failures": hyp.failures(), "constants": constants}))
    }

    #[pyo3(signature = (max_index, min_index = 0, p = None, jobs = 1))]
    fn search<'py>(
        &self,
        py: Python<'py>,
        max_index: u64,
        min_index: u64,
        p: Option<&PyPolynomial>,
        jobs: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let p = self.shift(p);
        let out = py.detach(|| search(&self.seq, &p, max_index, min_index, jobs));
        to_py(py, &Value::Array(out.solutions.iter().map(|s| s.to_json()).collect()))
    }

    #[pyo3(signature = (n, J = 2, p = None))]
    #[allow(non_snake_case)]
    fn expand<'py>(&self, py: Python<'py>, n: u64, J: u32, p: Option<&PyPolynomial>) -> PyResult<Bound<'py, PyAny>> {
        let p = self.shift(p);
        let exp = Expansion::new(&self.seq, &p, n).map_err(err)?;
        let terms = exp.head(J).map_err(err)?;
        let cert = certify_square(&self.seq, &p, n, J).map_err(err)?;
        let terms: Vec<Value> = terms
            .iter()
            .map(|t| json!({"h": t.index.0, "value": t.value.to_string(), "valuation": t.valuation, "certified_bound": t.certified_bound}))
            .collect();
        to_py(py, &json!({"n": n, "J": J, "terms": terms, "square_certificate": cert}))
    }

    #[pyo3(signature = (p = None))]
    fn ledger<'py>(&self, py: Python<'py>, p: Option<&PyPolynomial>) -> PyResult<Bound<'py, PyAny>> {
        let ledger = ConstantLedger::new(&self.seq, &self.shift(p)).map_err(err)?;
        to_py(py, &ledger.to_json())
    }

    /// gcd bound for `(G_y - p, G_z - p)` and the growth check at `x`.
    #[pyo3(signature = (x, y, z, p = None))]
    fn bounds<'py>(&self, py: Python<'py>, x: u64, y: u64, z: u64, p: Option<&PyPolynomial>) -> PyResult<Bound<'py, PyAny>> {
        let p = self.shift(p);
        let ledger = ConstantLedger::new(&self.seq, &p).map_err(err)?;
        let (g, gcd) = gcd_bound(&self.seq, &p, y, z).map_err(err)?;
        let growth = growth_check(&ledger, x, z);
        to_py(py, &json!({"gcd": poly_to_json(&g), "gcd_bound": gcd, "growth": growth}))
    }

    fn __repr__(&self) -> String {
        format!("PowerSum(order={}, p='{}')", self.seq.order(), self.p)
    }
}

/// Triples planted in the degenerate counterexample up to `max_index`.
#[pyfunction]
fn planted<'py>(py: Python<'py>, max_index: u64) -> PyResult<Bound<'py, PyAny>> {
    let triples = planted_triples(&canonical_counterexample(), max_index).map_err(err)?;
    let v: Vec<Value> = triples
        .iter()
        .map(|t| json!({"x": t.x, "y": t.y, "z": t.z, "a": poly_to_json(&t.a), "b": poly_to_json(&t.b), "c": poly_to_json(&t.c)}))
        .collect();
    to_py(py, &Value::Array(v))
}

/// Seeded height-property and sum-formula suites.
#[pyfunction]
#[pyo3(signature = (suite = 200, seed = 0))]
fn heights<'py>(py: Python<'py>, suite: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let pairs = sampling::random_pairs(seed, suite);
    let outer = Polynomial::from_ints(&[1, -2, 0, 1]);
    let lemma = lemma1_property_suite(&pairs, &outer).map_err(err)?;
    let singles: Vec<_> = pairs.iter().map(|(f, _)| f.clone()).collect();
    let sums = sum_formula_suite(&singles).map_err(err)?;
    to_py(
        py,
        &json!({
            "pass": lemma.all_pass() && sums.all_pass(),
            "heights": {"passed": lemma.passed(), "failed": lemma.failed()},
            "sum_formula": {"passed": sums.passed(), "failed": sums.failed()},
        }),
    )
}

#[pymodule]
fn powersum(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyPowerSum>()?;
    m.add_function(wrap_pyfunction!(planted, m)?)?;
    m.add_function(wrap_pyfunction!(heights, m)?)?;
    Ok(())
}
