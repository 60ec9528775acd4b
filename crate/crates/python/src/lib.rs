//! Python bindings: partitions and their classes, extremal norms, exact
//! generating-function quantities (as `int` and `fractions.Fraction`),
//! partition zeta values and the verification harness.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_rational::BigRational;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use partnorm::series::{p_dot, pentagonal_p};
use partnorm::stats::{self, Direction, MacMahonSampler};
use partnorm::verify::{self, VerifyConfig};
use partnorm::zeta::{self, PartSetSpec};
use partnorm::{Error, Limits, PartitionClass};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::CeilingExceeded { .. } | Error::OrderExceeded { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_class(name: &str) -> PyResult<PartitionClass> {
    name.parse().map_err(to_py_err)
}

/// An integer partition, stored by part multiplicities.
#[pyclass(name = "Partition", frozen, skip_from_py_object, module = "partnorm")]
#[derive(Clone)]
struct PyPartition(partnorm::Partition);

#[pymethods]
impl PyPartition {
    #[new]
    #[pyo3(signature = (parts = Vec::new()))]
    fn new(parts: Vec<i64>) -> PyResult<Self> {
        partnorm::Partition::from_parts(&parts)
            .map(Self)
            .map_err(to_py_err)
    }

    /// Parts in nonincreasing order.
    fn parts(&self) -> Vec<u64> {
        self.0.parts_vec()
    }

    /// `(part, multiplicity)` pairs, increasing by part.
    fn frequencies(&self) -> Vec<(u64, u64)> {
        self.0.frequencies().to_vec()
    }

    #[getter]
    fn size(&self) -> u64 {
        self.0.size()
    }

    #[getter]
    fn length(&self) -> u64 {
        self.0.length()
    }

    #[getter]
    fn norm(&self) -> BigUint {
        self.0.norm()
    }

    #[getter]
    fn rank(&self) -> i64 {
        self.0.rank()
    }

    fn multiplicity(&self, part: u64) -> u64 {
        self.0.multiplicity(part)
    }

    fn delete_part(&self, part: u64) -> PyResult<Self> {
        self.0.delete_part(part).map(Self).map_err(to_py_err)
    }

    fn frequency_notation(&self) -> String {
        self.0.frequency_notation()
    }

    fn __len__(&self) -> usize {
        self.0.length() as usize
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __lt__(&self, other: &Self) -> bool {
        self.0 < other.0
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.frequencies().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.parts_vec())
    }
}

/// A floating-point value with its truncation bound.
#[pyclass(name = "EvalResult", frozen, get_all, module = "partnorm")]
struct PyEvalResult {
    value: f64,
    tail_bound: Option<f64>,
    terms_used: u64,
}

impl From<zeta::EvalResult> for PyEvalResult {
    fn from(r: zeta::EvalResult) -> Self {
        Self {
            value: r.value,
            tail_bound: r.tail_bound,
            terms_used: r.terms_used,
        }
    }
}

#[pymethods]
impl PyEvalResult {
    fn __float__(&self) -> f64 {
        self.value
    }

    fn __repr__(&self) -> String {
        format!(
            "EvalResult(value={}, tail_bound={:?}, terms_used={})",
            self.value, self.tail_bound, self.terms_used
        )
    }
}

/// An exact value `coeff * pi**power`.
#[pyclass(name = "PiValue", frozen, module = "partnorm")]
struct PyPiValue(zeta::PiValue);

#[pymethods]
impl PyPiValue {
    #[getter]
    fn coeff(&self) -> BigRational {
        self.0.coeff.clone()
    }

    #[getter]
    fn power(&self) -> u32 {
        self.0.power
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PiValue({})", self.0)
    }
}

/// Partitions of `n` in a class, lexicographically decreasing.
#[pyfunction]
#[pyo3(signature = (n, class_name = "all"))]
fn enumerate(n: u64, class_name: &str) -> PyResult<Vec<PyPartition>> {
    let class = parse_class(class_name)?;
    if matches!(class, PartitionClass::All) {
        Limits::from_env().check_enumeration(n).map_err(to_py_err)?;
    }
    Ok(partnorm::enumerate(n, &class).map(PyPartition).collect())
}

fn extremal_tuple(r: stats::ExtremalResult) -> (BigUint, Vec<PyPartition>) {
    (r.value, r.witnesses.into_iter().map(PyPartition).collect())
}

/// Maximum norm over partitions of `n` in `all`, `odd`, `distinct` or `rr`,
/// as `(value, witnesses)`.
#[pyfunction]
#[pyo3(signature = (n, class_name = "all"))]
fn max_norm(n: u64, class_name: &str) -> PyResult<(BigUint, Vec<PyPartition>)> {
    let r = match parse_class(class_name)? {
        PartitionClass::All => stats::max_norm(n),
        PartitionClass::OddParts => stats::max_norm_odd(n),
        PartitionClass::Distinct => stats::max_norm_distinct(n),
        PartitionClass::RogersRamanujan => stats::max_norm_rr(n),
        other => {
            return Err(PyValueError::new_err(format!(
                "no closed form for class '{other}'; use brute_extremal_norm"
            )))
        }
    };
    Ok(extremal_tuple(r))
}

/// Exhaustive maximum (or minimum) norm, as `(value, witnesses)`.
#[pyfunction]
#[pyo3(signature = (n, class_name = "all", minimum = false))]
fn brute_extremal_norm(
    n: u64,
    class_name: &str,
    minimum: bool,
) -> PyResult<(BigUint, Vec<PyPartition>)> {
    let class = parse_class(class_name)?;
    let direction = if minimum {
        Direction::Min
    } else {
        Direction::Max
    };
    stats::brute_extremal_norm(n, &class, direction)
        .map(extremal_tuple)
        .map_err(to_py_err)
}

/// `(size, witnesses)` for the smallest partitions of norm `nu`.
#[pyfunction]
fn min_size_for_norm(nu: u64) -> PyResult<(u64, Vec<PyPartition>)> {
    let r = stats::min_size_for_norm(nu).map_err(to_py_err)?;
    Ok((r.size, r.witnesses.into_iter().map(PyPartition).collect()))
}

/// Number of partitions of `n`.
#[pyfunction]
fn partition_count(n: u64) -> BigUint {
    pentagonal_p(n)
}

/// Sum of the norms of the partitions of `n`.
#[pyfunction]
fn norm_sum(n: u64) -> BigUint {
    p_dot(n)
}

#[pyfunction]
fn lehmer_sum(n: u64) -> BigRational {
    stats::lehmer_sum(n)
}

#[pyfunction]
fn lehmer_sum_distinct(n: u64) -> BigRational {
    stats::lehmer_sum_distinct(n)
}

/// `1 / (N(l) prod m_i!)`.
#[pyfunction]
fn macmahon_coeff(partition: &PyPartition) -> BigRational {
    stats::macmahon_coeff(&partition.0)
}

/// `count` draws from the MacMahon distribution on partitions of `n`.
#[pyfunction]
#[pyo3(signature = (n, count, seed = 0x5eed_2024))]
fn sample_macmahon(n: u64, count: usize, seed: u64) -> Vec<PyPartition> {
    let mut sampler = MacMahonSampler::new(n, seed);
    (0..count).map(|_| PyPartition(sampler.sample())).collect()
}

#[pyfunction]
#[pyo3(signature = (s, tol = 1e-12))]
fn riemann_zeta(s: f64, tol: f64) -> PyResult<PyEvalResult> {
    zeta::riemann_zeta(s, tol)
        .map(Into::into)
        .map_err(to_py_err)
}

/// Euler product over a part set: `primes`, `even`, `nuclear`, `from:b` or
/// `list:2,3,5`.
#[pyfunction]
#[pyo3(signature = (part_set, s, tol = 1e-8))]
fn partition_zeta_product(part_set: &str, s: f64, tol: f64) -> PyResult<PyEvalResult> {
    let set: PartSetSpec = part_set.parse().map_err(to_py_err)?;
    zeta::partition_zeta_product(&set, s, tol)
        .map(Into::into)
        .map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (s, tol = 1e-8))]
fn distinct_zeta(s: f64, tol: f64) -> PyResult<PyEvalResult> {
    zeta::distinct_zeta(s, tol)
        .map(Into::into)
        .map_err(to_py_err)
}

#[pyfunction]
fn nuclear_zeta_dirichlet(s: f64, nu_max: u64) -> PyResult<PyEvalResult> {
    zeta::nuclear_zeta_dirichlet(s, nu_max)
        .map(Into::into)
        .map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (s, k, tol = 1e-12))]
fn fixed_length_zeta(s: f64, k: u64, tol: f64) -> PyResult<PyEvalResult> {
    zeta::fixed_length_zeta_faa(s, k, tol)
        .map(Into::into)
        .map_err(to_py_err)
}

/// Exact fixed-length zeta at an even integer argument.
#[pyfunction]
fn fixed_length_zeta_exact(s: u32, k: u64) -> PyResult<PyPiValue> {
    zeta::fixed_length_zeta_faa_exact(s, k)
        .map(PyPiValue)
        .map_err(to_py_err)
}

#[pyfunction]
fn zeta_even_exact(j: u32) -> PyResult<PyPiValue> {
    zeta::riemann_zeta_even_exact(j)
        .map(PyPiValue)
        .map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (terms = 13))]
fn golden_ratio_series(terms: u32) -> PyResult<PyEvalResult> {
    zeta::golden_ratio_series(terms)
        .map(Into::into)
        .map_err(to_py_err)
}

/// Number of unordered factorizations of `nu` into factors of at least 2.
#[pyfunction]
fn multiplicative_partitions(nu: u64) -> PyResult<u64> {
    zeta::multiplicative_partitions(nu).map_err(to_py_err)
}

#[pyfunction]
fn phi_partition(partition: &PyPartition) -> BigRational {
    zeta::phi_partition(&partition.0)
}

/// Runs verification suites; returns one dict per report.
#[pyfunction]
#[pyo3(signature = (suite = "all", n_max = None, allow_known_issues = true))]
fn run_verify<'py>(
    py: Python<'py>,
    suite: &str,
    n_max: Option<u64>,
    allow_known_issues: bool,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let config = VerifyConfig {
        n_max,
        limits: Limits::from_env(),
        allow_known_issues,
    };
    let suites = py
        .detach(|| verify::run(suite, &config))
        .map_err(to_py_err)?;
    let mut out = Vec::new();
    for s in &suites {
        for r in &s.reports {
            let d = PyDict::new(py);
            d.set_item("suite", &s.suite)?;
            d.set_item("identity", &r.identity)?;
            d.set_item("status", format!("{:?}", r.status))?;
            d.set_item("lhs", &r.lhs)?;
            d.set_item("rhs", &r.rhs)?;
            d.set_item("error", r.error)?;
            d.set_item("notes", &r.notes)?;
            d.set_item("known_issue", r.known_issue.map(|k| format!("{k:?}")))?;
            d.set_item("failed", r.is_failure(allow_known_issues))?;
            out.push(d);
        }
    }
    Ok(out)
}

#[pymodule]
#[pyo3(name = "partnorm")]
fn partnorm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyEvalResult>()?;
    m.add_class::<PyPiValue>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(max_norm, m)?)?;
    m.add_function(wrap_pyfunction!(brute_extremal_norm, m)?)?;
    m.add_function(wrap_pyfunction!(min_size_for_norm, m)?)?;
    m.add_function(wrap_pyfunction!(partition_count, m)?)?;
    m.add_function(wrap_pyfunction!(norm_sum, m)?)?;
    m.add_function(wrap_pyfunction!(lehmer_sum, m)?)?;
    m.add_function(wrap_pyfunction!(lehmer_sum_distinct, m)?)?;
    m.add_function(wrap_pyfunction!(macmahon_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(sample_macmahon, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(partition_zeta_product, m)?)?;
    m.add_function(wrap_pyfunction!(distinct_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(nuclear_zeta_dirichlet, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_length_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_length_zeta_exact, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_even_exact, m)?)?;
    m.add_function(wrap_pyfunction!(golden_ratio_series, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicative_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(phi_partition, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
