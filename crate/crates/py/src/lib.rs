//! Python bindings for the bipartition library.
//!
//! Structured results (solver outcomes, certificates, reports) cross the
//! boundary as plain dicts built from their JSON form.

use bipartition::coverage::{self, CoverageFamily};
use bipartition::graph::{self, sample_gnp};
use bipartition::harness::{self, ExperimentConfig, ReportFormat};
use bipartition::partition;
use bipartition::spectral;
use bipartition::{GnpSpec, VertexSet};
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

const DEFAULT_BUDGET: u64 = 5_000_000;

fn py_err(e: bipartition::Error) -> PyErr {
    match e {
        bipartition::Error::TooLarge(_) => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn family(n: usize, universe: Option<Vec<usize>>, sets: &[Vec<usize>]) -> PyResult<CoverageFamily> {
    match universe {
        Some(u) => CoverageFamily::from_lists(n, &u, sets),
        None => CoverageFamily::over_all(n, sets),
    }
    .map_err(py_err)
}

/// Undirected simple graph on vertices `0..n`.
#[pyclass(module = "bipartition_py", frozen)]
pub struct Graph {
    inner: bipartition::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = bipartition::Graph::from_edges(n, &edges).map_err(py_err)?;
        Ok(Graph { inner })
    }

    /// Seeded `G(n, p)` sample; the same seed always gives the same graph.
    #[staticmethod]
    fn gnp(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        let spec = GnpSpec::new(n, p, seed).map_err(py_err)?;
        Ok(Graph {
            inner: sample_gnp(&spec).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(Graph {
            inner: graph::parse_edge_list(text).map_err(py_err)?,
        })
    }

    fn to_edge_list(&self) -> String {
        graph::write_edge_list(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// `(n_plus, n_zero, n_minus)` of the adjacency matrix.
#[pyfunction]
#[pyo3(signature = (g, tol=None))]
fn inertia(g: &Graph, tol: Option<f64>) -> PyResult<(usize, usize, usize)> {
    let tol = tol.unwrap_or_else(|| spectral::default_tolerance(g.inner.n()));
    let sig = spectral::inertia(&g.inner, tol).map_err(py_err)?;
    Ok((sig.n_plus, sig.n_zero, sig.n_minus))
}

#[pyfunction]
fn eigenvalue_bound(g: &Graph) -> PyResult<usize> {
    spectral::graham_pollak_lower_bound(&g.inner).map_err(py_err)
}

/// Independence number with a witness; `exact` is false when the budget ran out.
#[pyfunction]
#[pyo3(signature = (g, budget=DEFAULT_BUDGET))]
fn independence_number(g: &Graph, budget: u64) -> (usize, Vec<usize>, bool) {
    let r = graph::independence_number_exact(&g.inner, budget);
    (r.size, r.witness.to_vec(), r.status == bipartition::SearchStatus::Exact)
}

/// Exact bipartition number. Returns a dict with `value`, `lower_bound`,
/// `status`, `nodes` and the witness partition.
#[pyfunction]
#[pyo3(signature = (g, budget=DEFAULT_BUDGET))]
fn tau<'py>(py: Python<'py>, g: &Graph, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| partition::tau_exact(&g.inner, budget)).map_err(py_err)?;
    to_py(py, &r)
}

/// Like [`tau`] with every part at least `K_{2,2}`; `value` is the string
/// `"infinity"` when no such partition exists.
#[pyfunction]
#[pyo3(signature = (g, budget=DEFAULT_BUDGET))]
fn tau_prime<'py>(py: Python<'py>, g: &Graph, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| partition::tau_prime_exact(&g.inner, budget)).map_err(py_err)?;
    to_py(py, &r)
}

/// `(n - alpha, n - beta + 1)` from exact searches; raises for graphs too
/// large for the induced-biclique search.
#[pyfunction]
fn upper_bounds(g: &Graph) -> PyResult<(usize, usize)> {
    let n = g.inner.n();
    let alpha = graph::independence_number_exact(&g.inner, u64::MAX).size;
    let beta = partition::largest_induced_biclique(&g.inner, graph::Effort::Exact, u64::MAX, 0).map_err(py_err)?;
    Ok((n - alpha, (n + 1).saturating_sub(beta.size)))
}

/// Most edges the family covers, with the trace that achieves it.
#[pyfunction]
#[pyo3(signature = (g, sets, universe=None))]
fn coverage_max<'py>(
    py: Python<'py>,
    g: &Graph,
    sets: Vec<Vec<usize>>,
    universe: Option<Vec<usize>>,
) -> PyResult<(usize, Bound<'py, PyAny>)> {
    let fam = family(g.inner.n(), universe, &sets)?;
    let (value, trace) = coverage::f_exact(&g.inner, &fam).map_err(py_err)?;
    Ok((value, to_py(py, &trace)?))
}

/// Edges certified uncoverable by the pairs-only bound; every set must be a pair.
#[pyfunction]
#[pyo3(signature = (g, sets, universe=None))]
fn pair_certificate(g: &Graph, sets: Vec<Vec<usize>>, universe: Option<Vec<usize>>) -> PyResult<Vec<(usize, usize)>> {
    let fam = family(g.inner.n(), universe, &sets)?;
    let (s, t) = coverage::derive_s_t(&fam).map_err(py_err)?;
    coverage::g_certificate(&g.inner, &fam, &s, &t).map_err(py_err)
}

/// Edges certified uncoverable by the peeled labels of `w_prime`.
#[pyfunction]
#[pyo3(signature = (g, universe, w_prime, labels))]
fn label_certificate(
    g: &Graph,
    universe: Vec<usize>,
    w_prime: Vec<usize>,
    labels: Vec<Vec<usize>>,
) -> PyResult<Vec<(usize, usize)>> {
    let n = g.inner.n();
    if w_prime.len() != labels.len() {
        return Err(PyValueError::new_err("w_prime and labels must have equal length"));
    }
    let set = |vs: &[usize]| VertexSet::from_vertices(n, vs.iter().copied()).map_err(py_err);
    let map = w_prime
        .iter()
        .zip(&labels)
        .map(|(&v, l)| Ok((v, set(l)?)))
        .collect::<PyResult<coverage::LabelMap>>()?;
    coverage::h_certificate(&g.inner, &set(&universe)?, &set(&w_prime)?, &map).map_err(py_err)
}

/// Best certified count of uncoverable edges: a dict with `value`, `method`, `edges`.
#[pyfunction]
#[pyo3(signature = (g, sets, universe=None, seed=0))]
fn uncovered_bound<'py>(
    py: Python<'py>,
    g: &Graph,
    sets: Vec<Vec<usize>>,
    universe: Option<Vec<usize>>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let fam = family(g.inner.n(), universe, &sets)?;
    let bound = coverage::uncovered_lower_bound(&g.inner, &fam, seed).map_err(py_err)?;
    to_py(py, &bound)
}

/// Runs an experiment config (JSON text) and returns one report dict per check.
#[pyfunction]
fn run_experiment<'py>(py: Python<'py>, config_json: &str) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let cfg = ExperimentConfig::from_json(config_json).map_err(py_err)?;
    let reports = py.detach(|| harness::run_experiment(&cfg)).map_err(py_err)?;
    reports
        .iter()
        .map(|r| py.import("json")?.call_method1("loads", (harness::render_report(r, ReportFormat::Json),)))
        .collect()
}

#[pymodule]
fn bipartition_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", bipartition::VERSION)?;
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(inertia, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalue_bound, m)?)?;
    m.add_function(wrap_pyfunction!(independence_number, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(tau_prime, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(coverage_max, m)?)?;
    m.add_function(wrap_pyfunction!(pair_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(label_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(uncovered_bound, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
