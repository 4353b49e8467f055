//! Python bindings for `sepsys`.
//!
//! Words are strings over `0-9a-z`; rationals (ε, coordinates) are accepted
//! as ints, floats or `"p/q"` / decimal strings and converted exactly.

use std::collections::BTreeSet;
use std::time::Duration;

use num_bigint::BigUint;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sepsys::bounds::eval_bounds;
use sepsys::construct::{greedy_construct, random_repair_construct, ScanOrder};
use sepsys::euclidean::{self, EuclideanPointSet, DEFAULT_TOLERANCE};
use sepsys::hamming::{self, parse_words, Guard, HammingSpace, Membership, ProjectionHull, Word};
use sepsys::l1::{self, L1PointSet};
use sepsys::metric::{load_graph_metric, PointSet};
use sepsys::rational::{format_rational, parse_rational};
use sepsys::search::{self, SearchOptions, SearchStatus};
use sepsys::separation::{self, Code as CoreCode, SeparationReport as CoreReport};

type Triple = (usize, usize, usize);

fn err(e: sepsys::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    if let Ok(v) = obj.extract::<i64>() {
        return Ok(BigRational::from_integer(v.into()));
    }
    if let Ok(s) = obj.extract::<String>() {
        return parse_rational(&s).ok_or_else(|| PyValueError::new_err(format!("not a rational: {s:?}")));
    }
    if let Ok(f) = obj.extract::<f64>() {
        return BigRational::from_float(f).ok_or_else(|| PyValueError::new_err(format!("not finite: {f}")));
    }
    Err(PyValueError::new_err("expected int, float or str"))
}

fn epsilon(obj: Option<&Bound<'_, PyAny>>) -> PyResult<BigRational> {
    obj.map_or_else(|| Ok(BigRational::from_integer(0.into())), rational)
}

fn points(rows: &[Vec<Bound<'_, PyAny>>]) -> PyResult<(usize, Vec<Vec<BigRational>>)> {
    let pts = rows
        .iter()
        .map(|row| row.iter().map(rational).collect::<PyResult<Vec<_>>>())
        .collect::<PyResult<Vec<_>>>()?;
    Ok((pts.first().map_or(0, Vec::len), pts))
}

fn load_words(words: &[String], q: Option<u8>) -> PyResult<(HammingSpace, Vec<Word>)> {
    parse_words(&words.join("\n"), q).map_err(err)
}

fn strings(words: &[Word]) -> Vec<String> {
    words.iter().map(|w| w.to_string()).collect()
}

/// A set of distinct words of one Hamming space.
#[pyclass(module = "sepsys", frozen)]
struct Code {
    inner: CoreCode,
}

#[pymethods]
impl Code {
    /// `q` defaults to one more than the largest symbol (at least 2).
    #[new]
    #[pyo3(signature = (words, q=None))]
    fn new(words: Vec<String>, q: Option<u8>) -> PyResult<Self> {
        let (space, words) = load_words(&words, q)?;
        Ok(Self { inner: CoreCode::new(space, words).map_err(err)? })
    }

    #[getter]
    fn q(&self) -> u8 {
        self.inner.space().q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.space().n()
    }

    #[getter]
    fn words(&self) -> Vec<String> {
        strings(self.inner.words())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Code({:?}, q={})", self.words(), self.q())
    }

    /// Projection hull of the code.
    fn hull(&self) -> PyResult<Hull> {
        hamming::hull_by_projections(self.inner.space(), self.inner.words())
            .map(|inner| Hull { inner })
            .map_err(err)
    }

    /// ε-(s,t) check; the binary (2,1) case takes the bit-packed fast path.
    #[pyo3(signature = (s=2, t=1, epsilon=None))]
    fn check(&self, s: usize, t: usize, epsilon: Option<&Bound<'_, PyAny>>) -> PyResult<SeparationReport> {
        let eps = self::epsilon(epsilon)?;
        let report = if (s, t) == (2, 1) && self.inner.space().q() == 2 {
            separation::check_21_fast(&self.inner, &eps)
        } else {
            separation::min_separating_count(&self.inner, s, t, &eps)
        };
        report.map(|inner| SeparationReport { inner }).map_err(err)
    }

    /// Coordinates (0-based) separating the words at indices `s` from those at `t`.
    fn separating_coordinates(&self, s: Vec<usize>, t: Vec<usize>) -> PyResult<Vec<usize>> {
        let pick = |idx: &[usize]| -> PyResult<Vec<Word>> {
            idx.iter()
                .map(|&i| {
                    self.inner.words().get(i).cloned().ok_or_else(|| PyValueError::new_err(format!("no word {i}")))
                })
                .collect()
        };
        separation::separating_coordinates(self.inner.space(), &pick(&s)?, &pick(&t)?).map_err(err)
    }
}

/// A product of coordinate projections: the convex hull of a word set.
#[pyclass(module = "sepsys", frozen)]
struct Hull {
    inner: ProjectionHull,
}

#[pymethods]
impl Hull {
    /// Allowed symbols per coordinate.
    #[getter]
    fn profile(&self) -> Vec<Vec<u8>> {
        self.inner.profile()
    }

    #[getter]
    fn cardinality(&self) -> BigUint {
        self.inner.cardinality()
    }

    fn __contains__(&self, word: &str) -> PyResult<bool> {
        let w = self.inner.space().word(word).map_err(err)?;
        self.inner.contains(&w).map_err(err)
    }

    /// A coordinate (1-based) whose projection misses `word`, or `None` when
    /// `word` lies in the hull.
    fn separating_coordinate(&self, word: &str) -> PyResult<Option<usize>> {
        let w = self.inner.space().word(word).map_err(err)?;
        Ok(match self.inner.separating_coordinate(&w).map_err(err)? {
            Membership::Inside => None,
            Membership::Separated { coordinate } => Some(coordinate),
        })
    }

    fn members(&self) -> PyResult<Vec<String>> {
        Ok(strings(&self.inner.members(Guard::default()).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Hull(profile={:?}, cardinality={})", self.inner.profile(), self.inner.cardinality())
    }
}

#[pyclass(module = "sepsys", frozen)]
struct SeparationReport {
    inner: CoreReport,
}

#[pymethods]
impl SeparationReport {
    #[getter]
    fn s(&self) -> usize {
        self.inner.s
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t
    }

    /// ε as an exact `"p/q"` string.
    #[getter]
    fn epsilon(&self) -> String {
        format_rational(&self.inner.epsilon)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn min_lambda(&self) -> Option<usize> {
        self.inner.min_lambda
    }

    #[getter]
    fn separating(&self) -> bool {
        self.inner.separating
    }

    /// `(S, T)` word lists of the first minimising pair, if the check failed.
    #[getter]
    fn violation(&self) -> Option<(Vec<String>, Vec<String>)> {
        self.inner.violation.as_ref().map(|v| (strings(&v.s), strings(&v.t)))
    }

    fn __bool__(&self) -> bool {
        self.inner.separating
    }

    fn __repr__(&self) -> String {
        format!(
            "SeparationReport(s={}, t={}, epsilon='{}', min_lambda={:?}, separating={})",
            self.inner.s,
            self.inner.t,
            self.epsilon(),
            self.inner.min_lambda,
            self.inner.separating
        )
    }
}

#[pyclass(module = "sepsys", frozen, get_all)]
struct SearchResult {
    n: usize,
    kappa: usize,
    witness: Vec<String>,
    /// `"exact"` or `"timeout"`.
    status: &'static str,
    nodes: u64,
}

#[pymethods]
impl SearchResult {
    fn __repr__(&self) -> String {
        format!("SearchResult(n={}, kappa={}, status='{}')", self.n, self.kappa, self.status)
    }
}

/// Projection hull of a list of words.
#[pyfunction]
#[pyo3(signature = (words, q=None))]
fn hull(words: Vec<String>, q: Option<u8>) -> PyResult<Hull> {
    let (space, words) = load_words(&words, q)?;
    hamming::hull_by_projections(space, &words).map(|inner| Hull { inner }).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (x, y, q=None))]
fn segment(x: String, y: String, q: Option<u8>) -> PyResult<Hull> {
    let (space, w) = load_words(&[x, y], q)?;
    hamming::segment(space, &w[0], &w[1]).map(|inner| Hull { inner }).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (words, s=2, t=1, epsilon=None, q=None))]
fn check(
    words: Vec<String>,
    s: usize,
    t: usize,
    epsilon: Option<&Bound<'_, PyAny>>,
    q: Option<u8>,
) -> PyResult<SeparationReport> {
    Code::new(words, q)?.check(s, t, epsilon)
}

/// Binary (2,1) check through the bit-packed path.
#[pyfunction]
#[pyo3(signature = (words, epsilon=None))]
fn check_21(words: Vec<String>, epsilon: Option<&Bound<'_, PyAny>>) -> PyResult<SeparationReport> {
    let code = Code::new(words, Some(2))?;
    separation::check_21_fast(&code.inner, &self::epsilon(epsilon)?)
        .map(|inner| SeparationReport { inner })
        .map_err(err)
}

/// `(dot, count)`: the cube inner product `⟨x-z, y-z⟩` and the number of
/// coordinates separating `{x, y}` from `{z}`.
#[pyfunction]
fn bridge(x: String, y: String, z: String) -> PyResult<(i64, usize)> {
    let (_, w) = load_words(&[x, y, z], Some(2))?;
    let audit = euclidean::bridge_check(&w[0], &w[1], &w[2]).map_err(err)?;
    Ok((audit.dot, audit.count))
}

/// Whether every angle of the point set is below `(1-ε)π`.
#[pyfunction]
#[pyo3(signature = (points, epsilon=None, tolerance=DEFAULT_TOLERANCE))]
fn is_acute(
    points: Vec<Vec<Bound<'_, PyAny>>>,
    epsilon: Option<&Bound<'_, PyAny>>,
    tolerance: f64,
) -> PyResult<bool> {
    let eps = match epsilon {
        Some(e) => rational(e)?,
        None => BigRational::new(1.into(), 2.into()),
    };
    let (dim, pts) = self::points(&points)?;
    let set = EuclideanPointSet::new(dim, pts).map_err(err)?.with_tolerance(tolerance);
    Ok(euclidean::is_eps_21_separating(&set, &eps).map_err(err)?.separating)
}

/// `None` when no point lies in the box of two others, else `(x, y, z)` indices.
#[pyfunction]
fn check_l1(points: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Option<Triple>> {
    let (dim, pts) = self::points(&points)?;
    let set = L1PointSet::new(dim, pts).map_err(err)?;
    Ok(l1::l1_check_21(&set).map_err(err)?.violation)
}

#[pyfunction]
#[pyo3(signature = (x, y, z, samples=100_000, seed=0))]
fn mc_separating_fraction(x: Vec<f64>, y: Vec<f64>, z: Vec<f64>, samples: u64, seed: u64) -> PyResult<f64> {
    euclidean::mc_separating_fraction(&x, &y, &z, samples, seed).map_err(err)
}

/// `(ok, violation)` where the violation indexes `(A, B, C)` in `family`.
#[pyfunction]
#[pyo3(signature = (family, strict=false))]
fn set_system(family: Vec<BTreeSet<String>>, strict: bool) -> PyResult<(bool, Option<Triple>)> {
    let r = separation::set_system_check(&family, strict).map_err(err)?;
    Ok((r.ok, r.violation))
}

/// Rows `(n, eq1, bevan, envelope)` for `n = 1..=n_max`.
#[pyfunction]
fn bounds(n_max: u32) -> Vec<(u32, BigUint, BigUint, f64)> {
    eval_bounds(n_max).rows.into_iter().map(|r| (r.n, r.eq1, r.bevan, r.envelope)).collect()
}

#[pyfunction]
fn rates() -> (f64, f64) {
    (sepsys::bounds::rate_probabilistic(), sepsys::bounds::rate_algebraic())
}

#[pyfunction]
#[pyo3(signature = (n, time_limit=None, parallel=1))]
fn exact_kappa(py: Python<'_>, n: usize, time_limit: Option<f64>, parallel: usize) -> PyResult<SearchResult> {
    let time_limit = time_limit
        .map(Duration::try_from_secs_f64)
        .transpose()
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let r = py
        .detach(|| search::exact_kappa(n, SearchOptions { time_limit, parallel }))
        .map_err(err)?;
    Ok(SearchResult {
        n: r.n,
        kappa: r.kappa,
        witness: strings(r.witness.words()),
        status: match r.status {
            SearchStatus::Exact => "exact",
            SearchStatus::Timeout => "timeout",
        },
        nodes: r.stats.nodes,
    })
}

/// Greedy code; `order` is `"lex"`, `"gray"` or `"random"`.
#[pyfunction]
#[pyo3(signature = (n, order="random", seed=0, restarts=1))]
fn greedy(n: usize, order: &str, seed: u64, restarts: usize) -> PyResult<Vec<String>> {
    let order = match order {
        "lex" => ScanOrder::Lex,
        "gray" => ScanOrder::Gray,
        "random" => ScanOrder::Random { seed },
        other => return Err(PyValueError::new_err(format!("unknown order {other:?}"))),
    };
    Ok(strings(greedy_construct(n, order, restarts).map_err(err)?.words()))
}

#[pyfunction]
#[pyo3(signature = (n, m, seed=0))]
fn random_repair(n: usize, m: usize, seed: u64) -> PyResult<Vec<String>> {
    Ok(strings(random_repair_construct(n, m, seed).map_err(err)?.words()))
}

/// `(segment, hull, depth)` for two vertices of an unweighted graph.
#[pyfunction]
fn graph_hull(edges: Vec<(String, String)>, x: &str, y: &str) -> PyResult<(Vec<String>, Vec<String>, usize)> {
    let space = load_graph_metric(&edges).map_err(err)?;
    let (a, b) = (space.index_of(x).map_err(err)?, space.index_of(y).map_err(err)?);
    let seg = space.segment(a, b).map_err(err)?;
    let (hull, depth) = space.hull_fixpoint(&[a, b].into_iter().collect()).map_err(err)?;
    let labels = |s: &PointSet| s.iter().map(|p| space.label(p).to_string()).collect();
    Ok((labels(&seg), labels(&hull), depth))
}

#[pymodule]
#[pyo3(name = "sepsys")]
fn sepsys_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Code>()?;
    m.add_class::<Hull>()?;
    m.add_class::<SeparationReport>()?;
    m.add_class::<SearchResult>()?;
    m.add_function(wrap_pyfunction!(hull, m)?)?;
    m.add_function(wrap_pyfunction!(segment, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(check_21, m)?)?;
    m.add_function(wrap_pyfunction!(bridge, m)?)?;
    m.add_function(wrap_pyfunction!(is_acute, m)?)?;
    m.add_function(wrap_pyfunction!(check_l1, m)?)?;
    m.add_function(wrap_pyfunction!(mc_separating_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(set_system, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(rates, m)?)?;
    m.add_function(wrap_pyfunction!(exact_kappa, m)?)?;
    m.add_function(wrap_pyfunction!(greedy, m)?)?;
    m.add_function(wrap_pyfunction!(random_repair, m)?)?;
    m.add_function(wrap_pyfunction!(graph_hull, m)?)?;
    Ok(())
}
