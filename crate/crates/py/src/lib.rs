//! Python bindings: designs, cover and complement ideals, symbolic powers,
//! colourings and containment checks. Reports are returned as plain dicts.

use std::time::Duration;

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use steiner_core::containment::{self, ContainmentEngine, ContainmentError, ContainmentQuery, HarbourneHunekeForm};
use steiner_core::hypergraph::{self as hg, Colourability, Coverability};
use steiner_core::rational::parse_rational;
use steiner_core::{io, reproduce, symbolic, Limits, Monomial};

create_exception!(steiner, ResourceLimitError, PyRuntimeError);

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn containment_err(e: ContainmentError) -> PyErr {
    match e {
        ContainmentError::ResourceLimit(partial) => {
            ResourceLimitError::new_err(serde_json::to_string(&*partial).expect("serializable"))
        }
        ContainmentError::Symbolic(symbolic::SymbolicError::ResourceLimit(reason)) => {
            ResourceLimitError::new_err(reason.to_string())
        }
        ContainmentError::InternalInconsistency(msg) => PyRuntimeError::new_err(msg),
        other => value_err(other),
    }
}

fn symbolic_err(e: symbolic::SymbolicError) -> PyErr {
    match e {
        symbolic::SymbolicError::ResourceLimit(reason) => ResourceLimitError::new_err(reason.to_string()),
        other => value_err(other),
    }
}

/// Converts any serializable report into Python objects via `json.loads`.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn exponents(m: &Monomial) -> Vec<u32> {
    m.exponents().to_vec()
}

fn limits(generator_cap: Option<usize>, time_cap: Option<f64>) -> PyResult<Limits> {
    let mut l = Limits::default();
    if let Some(cap) = generator_cap {
        if cap == 0 {
            return Err(PyValueError::new_err("generator_cap must be positive"));
        }
        l = l.with_generator_cap(cap);
    }
    if let Some(secs) = time_cap {
        if secs.is_nan() || secs <= 0.0 {
            return Err(PyValueError::new_err("time_cap must be positive"));
        }
        l = l.with_time_budget(Duration::from_secs_f64(secs));
    }
    Ok(l)
}

/// A validated Steiner system S(t, n, v) on vertices 1..v.
#[pyclass(name = "SteinerSystem", frozen)]
struct PySteinerSystem {
    inner: hg::SteinerSystem,
}

#[pymethods]
impl PySteinerSystem {
    #[new]
    fn new(v: usize, n: usize, t: usize, blocks: Vec<Vec<usize>>) -> PyResult<Self> {
        let inner = hg::SteinerSystem::validate(v, n, t, blocks).map_err(value_err)?;
        Ok(PySteinerSystem { inner })
    }

    /// `fano`, `sts7` or `sqs8`, or a path to a JSON design file.
    #[staticmethod]
    fn load(source: &str) -> PyResult<Self> {
        let source = if io::builtin(source).is_some() { format!("builtin:{source}") } else { source.to_string() };
        let inner = io::load_design(&source).map_err(value_err)?;
        Ok(PySteinerSystem { inner })
    }

    #[getter]
    fn v(&self) -> usize {
        self.inner.v()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t()
    }

    #[getter]
    fn blocks(&self) -> Vec<Vec<usize>> {
        self.inner.block_lists()
    }

    fn complement_blocks(&self) -> Vec<Vec<usize>> {
        self.inner.complement_blocks().iter().map(|b| b.to_vec()).collect()
    }

    /// A partition into exactly `c` classes meeting every block, or None.
    fn coverable(&self, c: usize) -> PyResult<Option<Vec<Vec<usize>>>> {
        if c == 0 {
            return Err(PyValueError::new_err("c must be positive"));
        }
        Ok(match hg::is_coverable(&self.inner.hypergraph(), c) {
            Coverability::Coverable(p) => Some(p.classes().iter().map(|s| s.to_vec()).collect()),
            Coverability::NotCoverable => None,
        })
    }

    /// A weak colouring with at most `m` colours, or None.
    fn colourable(&self, m: usize) -> PyResult<Option<Vec<Vec<usize>>>> {
        if m == 0 {
            return Err(PyValueError::new_err("m must be positive"));
        }
        Ok(match hg::is_colourable(&self.inner.hypergraph(), m) {
            Colourability::Colourable(p) => Some(p.classes().iter().map(|s| s.to_vec()).collect()),
            Colourability::NotColourable => None,
        })
    }

    fn chromatic_number(&self) -> PyResult<usize> {
        hg::chromatic_number(&self.inner.hypergraph()).map_err(value_err)
    }

    fn to_json(&self) -> String {
        io::design_to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "SteinerSystem(t={}, n={}, v={}, blocks={})",
            self.inner.t(),
            self.inner.n(),
            self.inner.v(),
            self.inner.blocks().len()
        )
    }
}

/// A squarefree monomial ideal given as an intersection of primes.
#[pyclass(name = "Ideal", frozen)]
struct PyIdeal {
    engine: ContainmentEngine,
}

#[pymethods]
impl PyIdeal {
    /// Intersection of the primes generated by each support (1-based).
    #[new]
    #[pyo3(signature = (variable_count, supports, generator_cap=None, time_cap=None))]
    fn new(
        variable_count: usize,
        supports: Vec<Vec<usize>>,
        generator_cap: Option<usize>,
        time_cap: Option<f64>,
    ) -> PyResult<Self> {
        let sets = supports
            .into_iter()
            .map(|s| {
                hg::VertexSet::try_from_vertices(s.iter().copied())
                    .ok_or_else(|| PyValueError::new_err(format!("support {s:?} outside 1..=64")))
            })
            .collect::<PyResult<Vec<_>>>()?;
        let p = symbolic::PrimeDecomposition::new(variable_count, sets).map_err(value_err)?;
        Self::build(p, generator_cap, time_cap)
    }

    /// Cover ideal of the blocks.
    #[staticmethod]
    #[pyo3(signature = (system, generator_cap=None, time_cap=None))]
    fn cover(system: &PySteinerSystem, generator_cap: Option<usize>, time_cap: Option<f64>) -> PyResult<Self> {
        Self::build(symbolic::cover_ideal(&system.inner.hypergraph()), generator_cap, time_cap)
    }

    /// Intersection of the primes of the non-blocks.
    #[staticmethod]
    #[pyo3(signature = (system, generator_cap=None, time_cap=None))]
    fn complement(system: &PySteinerSystem, generator_cap: Option<usize>, time_cap: Option<f64>) -> PyResult<Self> {
        let p = symbolic::complement_ideal(&system.inner).map_err(value_err)?;
        Self::build(p, generator_cap, time_cap)
    }

    #[getter]
    fn variable_count(&self) -> usize {
        self.engine.decomposition().variable_count()
    }

    #[getter]
    fn big_height(&self) -> u32 {
        self.engine.big_height()
    }

    #[getter]
    fn supports(&self) -> Vec<Vec<usize>> {
        self.engine.decomposition().supports().iter().map(|s| s.to_vec()).collect()
    }

    /// Minimal generators of the m-th symbolic power as exponent lists.
    fn symbolic_power(&self, m: u32) -> PyResult<Vec<Vec<u32>>> {
        if m == 0 {
            return Err(PyValueError::new_err("m must be at least 1"));
        }
        let ideal = self.engine.symbolic(m).map_err(containment_err)?;
        Ok(ideal.generators().iter().map(exponents).collect())
    }

    fn contains_symbolic(&self, exponents: Vec<u32>, m: u32) -> PyResult<bool> {
        symbolic::member_of_symbolic(&Monomial::new(exponents), self.engine.decomposition(), m).map_err(value_err)
    }

    /// `(degree, witness)` for the initial degree of the m-th symbolic power.
    fn alpha(&self, m: u32) -> PyResult<(u64, Vec<u32>)> {
        let a = self.engine.alpha(m).map_err(containment_err)?;
        Ok((a.degree, exponents(&a.witness)))
    }

    fn alpha_table<'py>(&self, py: Python<'py>, max_m: u32) -> PyResult<Bound<'py, PyAny>> {
        if max_m == 0 {
            return Err(PyValueError::new_err("max_m must be at least 1"));
        }
        let table = symbolic::alpha_table(self.engine.decomposition(), max_m).map_err(symbolic_err)?;
        to_py(py, &table)
    }

    /// Decides `I^(m) ⊆ M^slack I^r` and returns the report as a dict.
    #[pyo3(signature = (m, r, slack=0))]
    fn containment<'py>(&self, py: Python<'py>, m: u32, r: u32, slack: u64) -> PyResult<Bound<'py, PyAny>> {
        let report = self.engine.check(ContainmentQuery::new(m, r, slack)).map_err(containment_err)?;
        to_py(py, &report)
    }

    fn els<'py>(&self, py: Python<'py>, r: u32) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.engine.check_els(r).map_err(containment_err)?)
    }

    /// `form` is 1 or 2.
    fn harbourne_huneke<'py>(&self, py: Python<'py>, r_lo: u32, r_hi: u32, form: u8) -> PyResult<Bound<'py, PyAny>> {
        let form = match form {
            1 => HarbourneHunekeForm::First,
            2 => HarbourneHunekeForm::Second,
            _ => return Err(PyValueError::new_err("form must be 1 or 2")),
        };
        to_py(py, &self.engine.harbourne_huneke_scan(r_lo, r_hi, form).map_err(containment_err)?)
    }

    fn stable_harbourne<'py>(&self, py: Python<'py>, r_lo: u32, r_hi: u32) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.engine.stable_harbourne_scan(r_lo, r_hi).map_err(containment_err)?)
    }

    fn resurgence_search<'py>(&self, py: Python<'py>, m_max: u32, r_max: u32) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.engine.resurgence_search(m_max, r_max).map_err(containment_err)?)
    }

    #[pyo3(signature = (h_max, ambient_n=None))]
    fn chudnovsky<'py>(&self, py: Python<'py>, h_max: u32, ambient_n: Option<u32>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.engine.chudnovsky_check(ambient_n, h_max).map_err(containment_err)?)
    }

    #[pyo3(signature = (m, h_max, ambient_n=None))]
    fn demailly<'py>(
        &self,
        py: Python<'py>,
        m: u32,
        h_max: u32,
        ambient_n: Option<u32>,
    ) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.engine.demailly_check(ambient_n, m, h_max).map_err(containment_err)?)
    }
}

impl PyIdeal {
    fn build(p: symbolic::PrimeDecomposition, generator_cap: Option<usize>, time_cap: Option<f64>) -> PyResult<Self> {
        let engine = ContainmentEngine::new(p, limits(generator_cap, time_cap)?).map_err(containment_err)?;
        Ok(PyIdeal { engine })
    }
}

/// Search region for the resurgence; rationals are given as strings like "5/2".
#[pyfunction]
fn resurgence_region<'py>(py: Python<'py>, h: u32, n: u32, r1: &str, ratio: &str) -> PyResult<Bound<'py, PyAny>> {
    let parse = |s: &str| parse_rational(s).ok_or_else(|| PyValueError::new_err(format!("not a rational: {s}")));
    let region = containment::resurgence_region(h, n, parse(r1)?, parse(ratio)?).map_err(containment_err)?;
    to_py(py, &region)
}

/// Runs the built-in claims; returns `(id, passed, detail)` triples.
#[pyfunction]
#[pyo3(signature = (only=None))]
fn reproduce_claims(only: Option<Vec<String>>) -> Vec<(String, bool, String)> {
    reproduce::run_claims(&only.unwrap_or_default(), &Limits::default())
        .into_iter()
        .map(|r| (r.id, r.passed, r.detail))
        .collect()
}

#[pymodule]
fn steiner(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySteinerSystem>()?;
    m.add_class::<PyIdeal>()?;
    m.add_function(wrap_pyfunction!(resurgence_region, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_claims, m)?)?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    Ok(())
}
