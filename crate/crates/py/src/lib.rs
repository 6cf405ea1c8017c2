//! Python bindings. Exact rationals come back as `fractions.Fraction`, big
//! integers as `int`, cells as `(i, j)` tuples.

use ::aztec as core;
use core::region::count_tilings_capped;
use core::verify::{self, Suite};
use core::{Alpha, Cell, CoinSource, HoleSpec, Region};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: core::Error) -> PyErr {
    match e {
        core::Error::DivisionByZero | core::Error::ZeroDenominator | core::Error::Pole(_) => {
            PyZeroDivisionError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.numer().clone(), q.denom().clone()))
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    if let Ok(i) = obj.extract::<BigInt>() {
        return Ok(BigRational::from_integer(i));
    }
    let num: BigInt = obj.getattr("numerator")?.extract()?;
    let den: BigInt = obj.getattr("denominator")?.extract()?;
    if den == BigInt::from(0) {
        return Err(PyZeroDivisionError::new_err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn to_alpha(v: i64) -> PyResult<Alpha> {
    Alpha::new(v).map_err(err)
}

fn cell((i, j): (i64, i64)) -> Cell {
    Cell::new(i, j)
}

/// A rational function of `p` in canonical form.
#[pyclass(
    name = "RationalFunction",
    eq,
    frozen,
    skip_from_py_object,
    module = "aztec_py"
)]
#[derive(Clone, PartialEq)]
struct PyRationalFunction(core::RationalFunction);

#[pymethods]
impl PyRationalFunction {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyRationalFunction).map_err(err)
    }

    #[staticmethod]
    fn constant(c: i64) -> Self {
        PyRationalFunction(core::RationalFunction::constant(c))
    }

    fn eval<'py>(&self, py: Python<'py>, p: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let v = self.0.eval(&to_rational(p)?).map_err(err)?;
        fraction(py, &v)
    }

    fn shift(&self, k: i64) -> Self {
        PyRationalFunction(self.0.shift(k))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __add__(&self, other: &Self) -> Self {
        PyRationalFunction(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyRationalFunction(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyRationalFunction(&self.0 * &other.0)
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.0
            .checked_div(&other.0)
            .map(PyRationalFunction)
            .map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyRationalFunction(-self.0.clone())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction({:?})", self.0.to_string())
    }
}

#[pyfunction]
fn krav_eval(a: i64, b: i64, n: u32) -> BigInt {
    core::krav_eval(a, b, n)
}

#[pyfunction]
fn growth_g(a: i64, b: i64, alpha: i64) -> PyResult<PyRationalFunction> {
    let key = core::GrowthKey::new(a, b, to_alpha(alpha)?);
    Ok(PyRationalFunction(core::growth_g(key)))
}

#[pyfunction]
fn krav_symmetry_factor(a: i64, b: i64, alpha: i64) -> PyResult<PyRationalFunction> {
    Ok(PyRationalFunction(core::krav_symmetry_factor(
        a,
        b,
        to_alpha(alpha)?,
    )))
}

#[pyfunction]
fn prob_numeric(py: Python<'_>, l: i64, m: i64, n: u32) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, core::prob_numeric(l, m, n).value())
}

#[pyfunction]
fn prob_general(
    py: Python<'_>,
    a: (i64, i64),
    b: (i64, i64),
    n: u32,
) -> PyResult<Bound<'_, PyAny>> {
    let p = core::prob_general(cell(a), cell(b), n).map_err(err)?;
    fraction(py, p.value())
}

#[pyfunction]
fn creation_rate(py: Python<'_>, l: i64, m: i64, n: u32) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &core::creation_rate(l, m, n))
}

/// `None` when the probability vanishes by parity.
#[pyfunction]
fn f_symbolic(l: i64, m: i64, alpha: i64) -> PyResult<Option<PyRationalFunction>> {
    Ok(core::f_symbolic(l, m, to_alpha(alpha)?)
        .f
        .map(PyRationalFunction))
}

#[pyfunction]
fn cr_symbolic(l: i64, m: i64, alpha: i64) -> PyResult<Option<PyRationalFunction>> {
    Ok(core::cr_symbolic(l, m, to_alpha(alpha)?).map(PyRationalFunction))
}

#[pyfunction]
fn asymptotic_prob(x: f64, y: f64) -> f64 {
    core::asymptotic_prob(x, y)
}

#[pyfunction]
#[pyo3(signature = (order, removed = Vec::new(), cap = core::region::DEFAULT_ORACLE_CAP))]
fn count_tilings(order: u32, removed: Vec<(i64, i64)>, cap: u32) -> PyResult<BigUint> {
    let region = Region::new(order, removed.into_iter().map(cell)).map_err(err)?;
    count_tilings_capped(&region, cap).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (order, a, b, c, d, removed = Vec::new()))]
fn kuo_check(
    order: u32,
    a: (i64, i64),
    b: (i64, i64),
    c: (i64, i64),
    d: (i64, i64),
    removed: Vec<(i64, i64)>,
) -> PyResult<bool> {
    let region = Region::new(order, removed.into_iter().map(cell)).map_err(err)?;
    core::kuo_check(&region, cell(a), cell(b), cell(c), cell(d)).map_err(err)
}

#[pyfunction]
fn hole_count(l: i64, m: i64, n: u32) -> PyResult<BigUint> {
    let spec = HoleSpec::new(l, m, n).map_err(err)?;
    core::hole_count(&spec).map_err(err)
}

/// `(g, h)` of the closed-form hole count.
#[pyfunction]
fn hole_symbolic(l: i64, m: i64, alpha: i64) -> PyResult<(PyRationalFunction, PyRationalFunction)> {
    let s = core::hole_symbolic(l, m, to_alpha(alpha)?).map_err(err)?;
    Ok((PyRationalFunction(s.g), PyRationalFunction(s.h)))
}

#[pyfunction]
fn ciucu_count(n: u32) -> PyResult<BigUint> {
    core::ciucu_count(n).map_err(err)
}

type PyDomino = ((i64, i64), (i64, i64));

/// A shuffled tiling of order `n` as a sorted list of dominoes.
#[pyfunction]
fn sample(n: u32, seed: u64) -> Vec<PyDomino> {
    core::sample(n, &mut CoinSource::new(seed))
        .dominoes()
        .iter()
        .map(|d| {
            let (a, b) = d.cells();
            ((a.i, a.j), (b.i, b.j))
        })
        .collect()
}

#[pyfunction]
fn mc_estimate<'py>(
    py: Python<'py>,
    n: u32,
    a: (i64, i64),
    b: (i64, i64),
    samples: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let est = py
        .detach(|| core::mc_estimate(n, cell(a), cell(b), samples, seed))
        .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("hits", est.hits)?;
    out.set_item("samples", est.samples)?;
    out.set_item("frequency", est.frequency)?;
    out.set_item("stderr", est.stderr)?;
    Ok(out)
}

/// `[(suite, name, passed, detail), ...]`
#[pyfunction]
#[pyo3(signature = (suite = "all"))]
fn run_verify(py: Python<'_>, suite: &str) -> PyResult<Vec<(String, String, bool, String)>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let checks = py.detach(|| verify::run(suite));
    Ok(checks
        .into_iter()
        .map(|c| (c.suite.to_string(), c.name.to_string(), c.passed, c.detail))
        .collect())
}

#[pymodule]
fn aztec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRationalFunction>()?;
    m.add_function(wrap_pyfunction!(krav_eval, m)?)?;
    m.add_function(wrap_pyfunction!(growth_g, m)?)?;
    m.add_function(wrap_pyfunction!(krav_symmetry_factor, m)?)?;
    m.add_function(wrap_pyfunction!(prob_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(prob_general, m)?)?;
    m.add_function(wrap_pyfunction!(creation_rate, m)?)?;
    m.add_function(wrap_pyfunction!(f_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(cr_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_prob, m)?)?;
    m.add_function(wrap_pyfunction!(count_tilings, m)?)?;
    m.add_function(wrap_pyfunction!(kuo_check, m)?)?;
    m.add_function(wrap_pyfunction!(hole_count, m)?)?;
    m.add_function(wrap_pyfunction!(hole_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(ciucu_count, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(mc_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
