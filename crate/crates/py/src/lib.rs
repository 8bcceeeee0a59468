//! Python bindings: formulas, frames, models, and the main operations
//! (classification, validity, satisfiability search, filtration, the
//! split preimage, saturation, and modality counting). Reports that are
//! structured JSON on the CLI come back as plain Python dicts here.

use modal_planes::construction;
use modal_planes::filtration::{self, FiltrationMode};
use modal_planes::formula::{self, Formula};
use modal_planes::frame::{self, OneFrame, TwoFrame};
use modal_planes::generators::{self, QuasiKind};
use modal_planes::io::{FrameFile, ModelFile};
use modal_planes::logics;
use modal_planes::morphism::{self, Carrier, MorphismLevel};
use modal_planes::semantics::{self, Model, SearchCaps};
use modal_planes::Logic;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use std::collections::{BTreeMap, BTreeSet};

fn err(e: modal_planes::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    use serde_json::Value;
    match v {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py_any(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py_any(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)
            }
        }
        Value::String(s) => s.into_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_py_any(py)
        }
    }
}

fn to_py_json<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value)
        .map_err(|e| PyValueError::new_err(format!("serialization: {e}")))?;
    json_to_py(py, &v)
}

fn parse_logic(name: &str) -> PyResult<Logic> {
    name.parse().map_err(err)
}

/// A modal formula; parses the ASCII grammar on construction.
#[pyclass(name = "Formula", from_py_object)]
#[derive(Clone)]
struct PyFormula {
    inner: Formula,
}

#[pymethods]
impl PyFormula {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyFormula { inner: formula::parse(text).map_err(err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &PyFormula) -> bool {
        self.inner == other.inner
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn modal_depth(&self) -> usize {
        self.inner.modal_depth()
    }

    fn vars(&self) -> Vec<String> {
        self.inner.vars()
    }

    fn subformulas(&self) -> Vec<String> {
        formula::subformulas(&self.inner).iter().map(|g| g.to_string()).collect()
    }
}

/// A one-sorted frame on vertices 0..n-1.
#[pyclass(name = "OneFrame", from_py_object)]
#[derive(Clone)]
struct PyOneFrame {
    inner: OneFrame,
}

#[pymethods]
impl PyOneFrame {
    #[new]
    #[pyo3(signature = (n, edges, symmetric = false))]
    fn new(n: usize, edges: Vec<(usize, usize)>, symmetric: bool) -> PyResult<Self> {
        let inner = if symmetric {
            OneFrame::symmetric(n, &edges).map_err(err)?
        } else {
            OneFrame::new(n, &edges).map_err(err)?
        };
        Ok(PyOneFrame { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn __repr__(&self) -> String {
        format!("OneFrame(n={}, edges={:?})", self.inner.n(), self.inner.undirected_edges())
    }

    fn __eq__(&self, other: &PyOneFrame) -> bool {
        self.inner == other.inner
    }

    fn is_serial(&self) -> bool {
        self.inner.is_serial()
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    fn is_connected(&self) -> bool {
        frame::is_connected(&self.inner)
    }

    /// Evaluate one of O1, O2, O3, O4, O4', O5; returns (holds, evidence).
    fn check(&self, condition: &str) -> PyResult<(bool, Option<Vec<usize>>)> {
        let cond: frame::OCondition = condition.parse().map_err(err)?;
        let out = frame::check_o(&self.inner, cond);
        Ok((out.holds, out.evidence))
    }

    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py_json(py, &frame::classify(&self.inner))
    }

    /// The I^2-equivalence classes of a quasi-1-plane.
    fn i2_partition(&self) -> PyResult<Vec<Vec<usize>>> {
        frame::i2_partition(&self.inner).map_err(err)
    }

    /// Pairs in the k-fold composition of the relation.
    fn compose(&self, k: usize) -> Vec<(usize, usize)> {
        frame::compose(&self.inner, k).pairs()
    }

    fn symmetric_closure(&self) -> PyOneFrame {
        PyOneFrame { inner: frame::symmetric_closure(&self.inner) }
    }

    /// Whether every axiom instance of the logic is valid here.
    fn validates(&self, logic: &str) -> PyResult<bool> {
        logics::validates_logic(&self.inner, parse_logic(logic)?).map_err(err)
    }

    /// JSON wire form, matching the CLI file format.
    fn to_json(&self) -> String {
        serde_json::to_string(&FrameFile::from_one_frame(&self.inner)).expect("serializable")
    }
}

/// A two-sorted frame with labeled points and lines.
#[pyclass(name = "TwoFrame", from_py_object)]
#[derive(Clone)]
struct PyTwoFrame {
    inner: TwoFrame,
}

#[pymethods]
impl PyTwoFrame {
    #[new]
    fn new(
        points: Vec<String>,
        lines: Vec<String>,
        incidence: Vec<(String, String)>,
    ) -> PyResult<Self> {
        Ok(PyTwoFrame {
            inner: TwoFrame::from_labels(points, lines, &incidence).map_err(err)?,
        })
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.inner.points().to_vec()
    }

    #[getter]
    fn lines(&self) -> Vec<String> {
        self.inner.lines().to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "TwoFrame({} points, {} lines, {} incidences)",
            self.inner.points().len(),
            self.inner.lines().len(),
            self.inner.incidence().len()
        )
    }

    /// Evaluate one of P1, P2, P3, Q1, Q2; returns (holds, evidence).
    fn check(&self, condition: &str) -> PyResult<(bool, Option<Vec<String>>)> {
        let cond: frame::PCondition = condition.parse().map_err(err)?;
        let out = frame::check_p(&self.inner, cond);
        Ok((out.holds, out.evidence))
    }

    /// Merge the sorts into a symmetric one-frame (points first).
    fn plus(&self) -> PyOneFrame {
        PyOneFrame { inner: morphism::plus(&self.inner) }
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&FrameFile::from_two_frame(&self.inner)).expect("serializable")
    }
}

/// A model: frame plus valuation mapping variable names to world lists.
#[pyclass(name = "Model", from_py_object)]
#[derive(Clone)]
struct PyModel {
    inner: Model,
}

#[pymethods]
impl PyModel {
    #[new]
    fn new(frame: PyOneFrame, valuation: BTreeMap<String, Vec<usize>>) -> PyResult<Self> {
        let valuation: BTreeMap<String, BTreeSet<usize>> = valuation
            .into_iter()
            .map(|(p, ws)| (p, ws.into_iter().collect()))
            .collect();
        Ok(PyModel { inner: Model::new(frame.inner, valuation).map_err(err)? })
    }

    #[getter]
    fn frame(&self) -> PyOneFrame {
        PyOneFrame { inner: self.inner.frame().clone() }
    }

    #[getter]
    fn valuation(&self) -> BTreeMap<String, Vec<usize>> {
        self.inner
            .valuation()
            .iter()
            .map(|(p, ws)| (p.clone(), ws.iter().copied().collect()))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Model(n={}, vars={:?})", self.inner.frame().n(), self.inner.valuation().keys().collect::<Vec<_>>())
    }

    fn satisfies(&self, world: usize, f: &PyFormula) -> PyResult<bool> {
        semantics::satisfies(&self.inner, world, &f.inner).map_err(err)
    }

    fn true_in_model(&self, f: &PyFormula) -> bool {
        semantics::true_in_model(&self.inner, &f.inner)
    }

    /// Truth set of the formula across all worlds.
    fn truth_set(&self, f: &PyFormula) -> Vec<bool> {
        semantics::truth_set(&self.inner, &f.inner)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&ModelFile::from_model(&self.inner)).expect("serializable")
    }
}

/// Validity over all valuations; returns (valid, countermodel, world)
/// with countermodel None when valid.
#[pyfunction]
fn valid_in_frame(
    frame: &PyOneFrame,
    f: &PyFormula,
) -> PyResult<(bool, Option<PyModel>, Option<usize>)> {
    let v = semantics::valid_in_frame(&frame.inner, &f.inner).map_err(err)?;
    match v.countermodel {
        Some((m, w)) => Ok((v.valid, Some(PyModel { inner: m }), Some(w))),
        None => Ok((v.valid, None, None)),
    }
}

/// Bounded satisfiability search; returns a dict with status, witness,
/// explored sizes, the exhaustion bound, and the caps used.
#[pyfunction]
#[pyo3(signature = (f, logic, max_size = 4, max_frames = 200_000))]
fn sat_search(
    py: Python<'_>,
    f: &PyFormula,
    logic: &str,
    max_size: usize,
    max_frames: usize,
) -> PyResult<Py<PyAny>> {
    let caps = SearchCaps { max_frame_size: max_size, max_frames, time_limit: None };
    let res = semantics::sat_search(&f.inner, parse_logic(logic)?, &caps);
    let out = PyDict::new(py);
    out.set_item(
        "status",
        match res.status {
            semantics::SatStatus::Sat => "sat",
            semantics::SatStatus::Unsat => "unsat",
            semantics::SatStatus::Unknown => "unknown",
        },
    )?;
    match res.witness {
        Some((m, w)) => {
            out.set_item("witness_model", PyModel { inner: m })?;
            out.set_item("witness_world", w)?;
        }
        None => {
            out.set_item("witness_model", py.None())?;
            out.set_item("witness_world", py.None())?;
        }
    }
    out.set_item("explored_max_size", res.explored_max_size)?;
    out.set_item("explored_frames", res.explored_frames)?;
    out.set_item("exact_bound", res.exact_bound)?;
    out.set_item("phi_size", res.phi_size)?;
    out.set_item("max_frame_size", caps.max_frame_size)?;
    out.set_item("max_frames", caps.max_frames)?;
    out.into_py_any(py)
}

/// Filtrate a model through the subformulas of f; mode is "least" or
/// "split". Returns a dict with the class map, quotient model, and
/// whether truth of every subformula is preserved.
#[pyfunction]
#[pyo3(signature = (model, f, mode = "least"))]
fn filtrate(
    py: Python<'_>,
    model: &PyModel,
    f: &PyFormula,
    mode: &str,
) -> PyResult<Py<PyAny>> {
    let mode = match mode {
        "least" => FiltrationMode::Least,
        "split" | "projective-split" => FiltrationMode::ProjectiveSplit,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let filt = filtration::filtrate(&model.inner, &f.inner, mode).map_err(err)?;
    let ok = filtration::verify_filtration_theorem(&filt).is_none();
    let out = PyDict::new(py);
    out.set_item("phi_size", filt.phi.len())?;
    out.set_item("classes", filt.classes.clone())?;
    out.set_item("quotient", PyModel { inner: filt.quotient.clone() })?;
    out.set_item("truth_preserved", ok)?;
    out.into_py_any(py)
}

/// Split a connected quasi-1-plane into a quasi-2-plane preimage;
/// returns (two_frame, map) where map lists the image of each carrier
/// index, points first.
#[pyfunction]
fn split_preimage(frame: &PyOneFrame) -> PyResult<(PyTwoFrame, Vec<usize>)> {
    let (two, m) = morphism::split_preimage(&frame.inner).map_err(err)?;
    Ok((PyTwoFrame { inner: two }, m.map().to_vec()))
}

/// Check a vertex map between one-sorted frames; level is "bounded" or
/// "homomorphism". Returns (holds, violation, surjective).
#[pyfunction]
#[pyo3(signature = (source, target, map, level = "bounded"))]
fn check_morphism(
    source: &PyOneFrame,
    target: &PyOneFrame,
    map: Vec<usize>,
    level: &str,
) -> PyResult<(bool, Option<String>, bool)> {
    let level = match level {
        "bounded" => MorphismLevel::Bounded,
        "homomorphism" | "hom" => MorphismLevel::Homomorphism,
        other => return Err(PyValueError::new_err(format!("unknown level {other:?}"))),
    };
    let m = morphism::Morphism::new(
        Carrier::One(source.inner.clone()),
        Carrier::One(target.inner.clone()),
        map,
    )
    .map_err(err)?;
    let violation = morphism::check_morphism(&m, level);
    Ok((
        violation.is_none(),
        violation.map(|v| v.to_string()),
        morphism::is_surjective(&m),
    ))
}

/// Saturate a network over an elliptic target; returns the audit report
/// plus the resulting frame and vertex map.
#[pyfunction]
#[pyo3(signature = (target, rounds = 2))]
fn saturate(py: Python<'_>, target: &PyOneFrame, rounds: usize) -> PyResult<Py<PyAny>> {
    let (net, report) = construction::saturate(&target.inner, rounds).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("frame", PyOneFrame { inner: net.frame() })?;
    out.set_item("theta", net.theta().to_vec())?;
    out.set_item("report", to_py_json(py, &report)?)?;
    out.into_py_any(py)
}

/// The scheme instance <>^m []^n p0 -> []^p <>^q p0.
#[pyfunction]
fn scheme_instance(m: usize, n: usize, p: usize, q: usize) -> PyFormula {
    PyFormula { inner: logics::scheme_instance(logics::SchemeParams::new(m, n, p, q)) }
}

/// The first-order frame condition matching the scheme parameters.
#[pyfunction]
fn g_prime_condition(frame: &PyOneFrame, m: usize, n: usize, p: usize, q: usize) -> bool {
    logics::g_prime_condition(&frame.inner, logics::SchemeParams::new(m, n, p, q))
}

/// Count non-equivalent modalities over the standard corpus of a logic.
#[pyfunction]
#[pyo3(signature = (logic, max_len = 4, size_cap = 5))]
fn modality_classes(
    py: Python<'_>,
    logic: &str,
    max_len: usize,
    size_cap: usize,
) -> PyResult<Py<PyAny>> {
    let corpus = logics::standard_corpus(parse_logic(logic)?, size_cap);
    let report = logics::modality_classes(max_len, &corpus, &logics::ModalityCaps::default());
    to_py_json(py, &report)
}

#[pyfunction]
fn gen_pg2(p: u64) -> PyResult<PyTwoFrame> {
    Ok(PyTwoFrame { inner: generators::gen_pg2(p).map_err(err)? })
}

#[pyfunction]
fn gen_polarity_graph(p: u64) -> PyResult<PyOneFrame> {
    Ok(PyOneFrame { inner: generators::gen_polarity_graph(p).map_err(err)? })
}

#[pyfunction]
fn gen_windmill(k: usize) -> PyResult<PyOneFrame> {
    Ok(PyOneFrame { inner: generators::gen_windmill(k).map_err(err)? })
}

#[pyfunction]
fn gen_f0() -> PyOneFrame {
    PyOneFrame { inner: generators::gen_f0() }
}

/// Seeded random connected quasi-1-plane; kind is "elliptic" or
/// "projective".
#[pyfunction]
fn gen_random_quasi(size: usize, kind: &str, seed: u64) -> PyResult<PyOneFrame> {
    let kind = match kind {
        "elliptic" => QuasiKind::Elliptic,
        "projective" => QuasiKind::Projective,
        other => return Err(PyValueError::new_err(format!("unknown kind {other:?}"))),
    };
    Ok(PyOneFrame { inner: generators::gen_random_quasi(size, kind, seed).map_err(err)? })
}

#[pymodule]
fn modal_planes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFormula>()?;
    m.add_class::<PyOneFrame>()?;
    m.add_class::<PyTwoFrame>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(valid_in_frame, m)?)?;
    m.add_function(wrap_pyfunction!(sat_search, m)?)?;
    m.add_function(wrap_pyfunction!(filtrate, m)?)?;
    m.add_function(wrap_pyfunction!(split_preimage, m)?)?;
    m.add_function(wrap_pyfunction!(check_morphism, m)?)?;
    m.add_function(wrap_pyfunction!(saturate, m)?)?;
    m.add_function(wrap_pyfunction!(scheme_instance, m)?)?;
    m.add_function(wrap_pyfunction!(g_prime_condition, m)?)?;
    m.add_function(wrap_pyfunction!(modality_classes, m)?)?;
    m.add_function(wrap_pyfunction!(gen_pg2, m)?)?;
    m.add_function(wrap_pyfunction!(gen_polarity_graph, m)?)?;
    m.add_function(wrap_pyfunction!(gen_windmill, m)?)?;
    m.add_function(wrap_pyfunction!(gen_f0, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random_quasi, m)?)?;
    Ok(())
}
