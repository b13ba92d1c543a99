//! Python bindings: bound computations return `BoundReport` objects whose
//! certificates convert to plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use kissing::analysis::{self, SphericalCode};
use kissing::constructions::{self, BinaryCode, ConstructionKind};
use kissing::musin::{MusinConfig, SearchParams};
use kissing::polynomials::{self, parse_rational, RationalPolynomial};
use kissing::{geometric, levenshtein, lp, tables};

create_exception!(kissing_py, KissingError, PyValueError);

fn err(e: kissing::Error) -> PyErr {
    KissingError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(value).map_err(|e| KissingError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Polynomial", module = "kissing_py")]
#[derive(Clone)]
pub struct PyPolynomial {
    inner: kissing::Polynomial,
}

#[pymethods]
impl PyPolynomial {
    /// Monomial coefficients, constant term first.
    #[new]
    fn new(coeffs: Vec<f64>) -> Self {
        Self {
            inner: kissing::Polynomial::new(coeffs),
        }
    }

    #[staticmethod]
    fn from_roots(roots: Vec<f64>) -> Self {
        Self {
            inner: kissing::Polynomial::from_roots(&roots),
        }
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn __call__(&self, t: f64) -> f64 {
        self.inner.eval(t)
    }

    /// Coefficients `f_0, ..., f_d` in the Gegenbauer basis of dimension `n`.
    fn gegenbauer_coeffs(&self, n: usize) -> PyResult<Vec<f64>> {
        Ok(polynomials::gegenbauer_expand(n, &self.inner)
            .map_err(err)?
            .coeffs)
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.inner.coeffs())
    }
}

#[pyclass(name = "BoundReport", module = "kissing_py", frozen)]
pub struct PyBoundReport {
    inner: kissing::BoundReport,
}

#[pymethods]
impl PyBoundReport {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn s(&self) -> f64 {
        self.inner.s
    }

    #[getter]
    fn method(&self) -> &'static str {
        self.inner.method.tag()
    }

    #[getter]
    fn value(&self) -> f64 {
        self.inner.value
    }

    #[getter]
    fn floor_value(&self) -> Option<u64> {
        self.inner.floor_value
    }

    #[getter]
    fn rigorous(&self) -> bool {
        self.inner.rigorous
    }

    #[getter]
    fn certificate(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py(py, &self.inner.certificate)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| KissingError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundReport(n={}, s={}, method='{}', value={}, rigorous={})",
            self.inner.n,
            self.inner.s,
            self.inner.method.tag(),
            self.inner.value,
            if self.inner.rigorous { "True" } else { "False" }
        )
    }
}

fn report(r: kissing::Result<kissing::BoundReport>) -> PyResult<PyBoundReport> {
    r.map(|inner| PyBoundReport { inner }).map_err(err)
}

#[pyclass(name = "SphericalCode", module = "kissing_py", frozen)]
pub struct PySphericalCode {
    inner: SphericalCode,
}

#[pymethods]
impl PySphericalCode {
    /// Rows are re-normalized when within 1e-6 of unit norm.
    #[new]
    fn new(points: Vec<Vec<f64>>) -> PyResult<Self> {
        let n = points.first().map_or(0, Vec::len);
        Ok(Self {
            inner: SphericalCode::normalized(n, points).map_err(err)?,
        })
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: analysis::builtin_spherical_code(name).map_err(err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn points(&self) -> Vec<Vec<f64>> {
        self.inner.to_rows()
    }

    fn max_inner_product(&self) -> PyResult<f64> {
        analysis::max_inner_product(&self.inner).map_err(err)
    }

    /// `(t, A_t)` pairs of the averaged two-point distribution.
    fn distance_distribution(&self) -> PyResult<Vec<(f64, f64)>> {
        Ok(analysis::two_point_distribution(&self.inner)
            .map_err(err)?
            .buckets)
    }

    fn s_k(&self, lo: f64, hi: f64, k: u32) -> PyResult<f64> {
        let interval = analysis::Interval::new(lo, hi).map_err(err)?;
        Ok(analysis::s_k_moment(&self.inner, interval, k))
    }

    fn check_pfender(&self, py: Python<'_>, s: f64) -> PyResult<PyObject> {
        to_py(py, &analysis::check_pfender(&self.inner, s).map_err(err)?)
    }

    fn check_cap_constraint(&self, py: Python<'_>, m: usize, s: f64) -> PyResult<PyObject> {
        to_py(
            py,
            &analysis::check_cap_constraint(&self.inner, m, s).map_err(err)?,
        )
    }

    /// Lower-bound report `A(n, s(C)) >= |C|`.
    fn report(&self, source: &str) -> PyResult<PyBoundReport> {
        report(analysis::explicit_code_report(&self.inner, source))
    }
}

#[pyfunction]
fn gegenbauer(n: usize, k: usize) -> PyResult<PyPolynomial> {
    Ok(PyPolynomial {
        inner: polynomials::gegenbauer(n, k).map_err(err)?,
    })
}

#[pyfunction]
fn levenshtein_bound(n: usize, s: f64) -> PyResult<PyBoundReport> {
    report(levenshtein::levenshtein_bound(n, s))
}

#[pyfunction]
fn levenshtein_polynomial(n: usize, s: f64) -> PyResult<PyPolynomial> {
    Ok(PyPolynomial {
        inner: levenshtein::levenshtein_polynomial(n, s).map_err(err)?,
    })
}

#[pyfunction]
fn verify_theorem1(n: usize, s: f64, p: &PyPolynomial) -> PyResult<PyBoundReport> {
    report(lp::verify_theorem1(n, s, &p.inner))
}

/// Exact check; `s` and each coefficient are strings such as `"1/2"` or
/// `"0.125"`.
#[pyfunction]
fn verify_theorem1_exact(n: usize, s: &str, coeffs: Vec<String>) -> PyResult<PyBoundReport> {
    let s = parse_rational(s).map_err(err)?;
    let coeffs = coeffs
        .iter()
        .map(|c| parse_rational(c))
        .collect::<kissing::Result<Vec<_>>>()
        .map_err(err)?;
    let v = lp::verify_theorem1_exact(n, &s, &RationalPolynomial::new(coeffs)).map_err(err)?;
    Ok(PyBoundReport {
        inner: v.to_report(),
    })
}

#[pyfunction]
#[pyo3(signature = (n, s, degree=None, grid_size=lp::DEFAULT_GRID))]
fn lp_search(n: usize, s: f64, degree: Option<usize>, grid_size: usize) -> PyResult<PyBoundReport> {
    let degree = degree.unwrap_or_else(|| lp::default_lp_degree(n));
    report(lp::lp_search(n, s, degree, grid_size))
}

#[pyfunction]
#[pyo3(signature = (n, s, tol=1e-6))]
fn coxeter_boroczky_bound(n: usize, s: f64, tol: f64) -> PyResult<PyBoundReport> {
    report(geometric::coxeter_boroczky_bound(n, s, tol))
}

#[pyfunction]
fn schlafli_f(n: usize, alpha: f64, tol: f64) -> PyResult<f64> {
    geometric::schlafli_f(n, alpha, tol).map_err(err)
}

#[pyfunction]
fn fejes_toth_bound(s: f64) -> PyResult<PyBoundReport> {
    report(geometric::fejes_toth_cardinality(s))
}

#[pyfunction]
#[pyo3(signature = (n, s, t0, mu, f, restarts=50, iterations=2000, seed=0))]
#[allow(clippy::too_many_arguments)]
fn musin_bound(
    n: usize,
    s: f64,
    t0: f64,
    mu: usize,
    f: &PyPolynomial,
    restarts: usize,
    iterations: usize,
    seed: u64,
) -> PyResult<PyBoundReport> {
    let config = MusinConfig::new(n, s, t0, mu)
        .map_err(err)?
        .with_search(SearchParams {
            restarts,
            iterations,
            seed,
        });
    report(kissing::musin::musin_bound(&config, &f.inner))
}

fn binary_code(code: &str) -> PyResult<BinaryCode> {
    match constructions::builtin_code(code) {
        Ok(c) => Ok(c),
        Err(kissing::Error::UnknownCode(_)) => BinaryCode::parse(code).map_err(err),
        Err(e) => Err(err(e)),
    }
}

/// Kissing lower bound from Construction A or B. `code` is a builtin name
/// (`"golay24"`, `"even_weight(8)"`, ...) or codewords as 0/1 strings, one
/// per line.
#[pyfunction]
fn construction_bound(code: &str, kind: &str) -> PyResult<PyBoundReport> {
    let kind = match kind.to_ascii_lowercase().as_str() {
        "a" => ConstructionKind::A,
        "b" => ConstructionKind::B,
        other => {
            return Err(KissingError::new_err(format!(
                "construction must be `a` or `b`, got `{other}`"
            )))
        }
    };
    let parsed = binary_code(code)?;
    report(constructions::construction_report(&parsed, kind, code))
}

#[pyfunction]
fn known_table(py: Python<'_>) -> PyResult<PyObject> {
    to_py(py, &tables::known_table())
}

#[pyfunction]
fn reconcile(
    py: Python<'_>,
    n: usize,
    reports: Vec<PyRef<'_, PyBoundReport>>,
) -> PyResult<PyObject> {
    let reports: Vec<_> = reports.iter().map(|r| r.inner.clone()).collect();
    to_py(py, &tables::reconcile(n, &reports).map_err(err)?)
}

#[pymodule]
fn kissing_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("KissingError", m.py().get_type::<KissingError>())?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyBoundReport>()?;
    m.add_class::<PySphericalCode>()?;
    m.add_function(wrap_pyfunction!(gegenbauer, m)?)?;
    m.add_function(wrap_pyfunction!(levenshtein_bound, m)?)?;
    m.add_function(wrap_pyfunction!(levenshtein_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem1_exact, m)?)?;
    m.add_function(wrap_pyfunction!(lp_search, m)?)?;
    m.add_function(wrap_pyfunction!(coxeter_boroczky_bound, m)?)?;
    m.add_function(wrap_pyfunction!(schlafli_f, m)?)?;
    m.add_function(wrap_pyfunction!(fejes_toth_bound, m)?)?;
    m.add_function(wrap_pyfunction!(musin_bound, m)?)?;
    m.add_function(wrap_pyfunction!(construction_bound, m)?)?;
    m.add_function(wrap_pyfunction!(known_table, m)?)?;
    m.add_function(wrap_pyfunction!(reconcile, m)?)?;
    Ok(())
}
