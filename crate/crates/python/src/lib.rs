//! Python bindings: posets, families, homology, Leray numbers, nerves and
//! the bound checks.

use std::collections::BTreeMap;

use mnv_core::families::{FamilyError, OpenBox, Rational, SetFamily};
use mnv_core::homology::{reduced_betti, BettiVector};
use mnv_core::io;
use mnv_core::leray::{self, LerayConfig, LerayError, LerayReport, Mode};
use mnv_core::nerve::{self, LabeledPoset};
use mnv_core::poset::{barycentric_subdivision, is_isomorphic, SimplicialComplex, SimplicialPoset};
use mnv_core::verify::{self, BoundReport, HellyMode, RandomSpec, Relation, VerifyError};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(mnv, CapExceeded, PyRuntimeError, "Exhaustive enumeration refused by the vertex or member cap.");

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn leray_error(e: LerayError) -> PyErr {
    CapExceeded::new_err(e.to_string())
}

fn family_error(e: FamilyError) -> PyErr {
    match e {
        FamilyError::TooManyMembers { .. } => CapExceeded::new_err(e.to_string()),
        other => value_error(other),
    }
}

fn verify_error(e: VerifyError) -> PyErr {
    match e {
        VerifyError::Leray(l) => leray_error(l),
        VerifyError::Family(f) => family_error(f),
        other => value_error(other),
    }
}

fn betti_dict(b: &BettiVector) -> BTreeMap<i32, usize> {
    b.nonzero().collect()
}

fn config(cap: usize, sample: Option<usize>, seed: u64) -> LerayConfig {
    LerayConfig { cap, sample, seed }
}

/// A simplicial poset. Cell 0 is the least element.
#[pyclass(name = "Poset", module = "mnv", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoset {
    inner: SimplicialPoset,
    /// `(members, component id)` per cell for nerves and multinerves.
    labels: Option<Vec<(Vec<usize>, Option<usize>)>>,
}

impl PyPoset {
    fn plain(inner: SimplicialPoset) -> Self {
        PyPoset { inner, labels: None }
    }

    fn labeled(m: LabeledPoset) -> Self {
        let labels = m.labels.iter().map(|l| (l.members.clone(), l.component.as_ref().map(|c| c.id))).collect();
        PyPoset {
            inner: m.poset,
            labels: Some(labels),
        }
    }
}

#[pymethods]
impl PyPoset {
    /// Parses `poset v1` or `complex v1` text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
        let p = if first.starts_with("complex") {
            io::parse_complex(text).map(|k| k.to_poset())
        } else {
            io::parse_poset(text)
        };
        p.map(Self::plain).map_err(value_error)
    }

    /// The simplicial complex generated by `facets` (lists of vertex labels).
    #[staticmethod]
    fn from_facets(facets: Vec<Vec<u32>>) -> PyResult<Self> {
        let k = SimplicialComplex::from_facets(facets).map_err(value_error)?;
        Ok(Self::plain(k.to_poset()))
    }

    fn to_text(&self) -> String {
        io::write_poset(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Poset(cells={}, vertices={}, dim={})", self.inner.len(), self.inner.num_vertices(), self.inner.max_dim())
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn dim(&self) -> i32 {
        self.inner.max_dim()
    }

    /// Cell counts by dimension, starting at dimension -1.
    fn f_vector(&self) -> Vec<usize> {
        self.inner.f_vector()
    }

    fn faces(&self, cell: u32) -> PyResult<Vec<u32>> {
        let c = mnv_core::poset::CellId(cell);
        if !self.inner.contains(c) {
            return Err(value_error(format!("no cell {cell}")));
        }
        Ok(self.inner.faces(c).iter().map(|f| f.0).collect())
    }

    fn is_complex(&self) -> bool {
        self.inner.is_complex()
    }

    /// Cell labels `(members, component id or None)` of a nerve or multinerve.
    fn labels(&self) -> Option<Vec<(Vec<usize>, Option<usize>)>> {
        self.labels.clone()
    }

    /// Non-zero reduced Betti numbers over Q, as `{dimension: rank}`.
    fn betti(&self) -> BTreeMap<i32, usize> {
        betti_dict(&reduced_betti(&self.inner))
    }

    /// Barycentric subdivision (the order complex of the proper part).
    fn subdivision(&self) -> Self {
        Self::plain(barycentric_subdivision(&self.inner).to_poset())
    }

    fn is_isomorphic(&self, other: &PyPoset) -> bool {
        is_isomorphic(&self.inner, &other.inner)
    }

    #[pyo3(signature = (cap = leray::DEFAULT_CAP, sample = None, seed = 0))]
    fn leray(&self, py: Python<'_>, cap: usize, sample: Option<usize>, seed: u64) -> PyResult<PyLeray> {
        let cfg = config(cap, sample, seed);
        py.detach(|| leray::leray_number(&self.inner, &cfg)).map(PyLeray::from).map_err(leray_error)
    }

    #[pyo3(signature = (cap = leray::DEFAULT_CAP, sample = None, seed = 0))]
    fn j_index(&self, py: Python<'_>, cap: usize, sample: Option<usize>, seed: u64) -> PyResult<PyLeray> {
        let cfg = config(cap, sample, seed);
        py.detach(|| leray::j_index(&self.inner, &cfg)).map(PyLeray::from).map_err(leray_error)
    }
}

/// Result of a Leray number or J index computation.
#[pyclass(name = "LerayResult", module = "mnv", frozen, get_all)]
struct PyLeray {
    value: usize,
    /// False for sampled runs, whose value is only a lower bound.
    exact: bool,
    witness_vertices: Option<Vec<u32>>,
    witness_dim: Option<i32>,
    witness_cell: Option<u32>,
    text: String,
}

impl From<LerayReport> for PyLeray {
    fn from(r: LerayReport) -> Self {
        PyLeray {
            value: r.value,
            exact: r.mode == Mode::Exact,
            witness_vertices: r.witness.as_ref().map(|w| w.vertices.iter().map(|v| v.0).collect()),
            witness_dim: r.witness.as_ref().map(|w| w.dim),
            witness_cell: r.witness.as_ref().and_then(|w| w.cell.map(|c| c.0)),
            text: r.to_leray_v1(),
        }
    }
}

#[pymethods]
impl PyLeray {
    fn to_text(&self) -> String {
        self.text.clone()
    }

    fn __repr__(&self) -> String {
        format!("LerayResult(value={}, exact={})", self.value, self.exact)
    }
}

/// Outcome of a bound check.
#[pyclass(name = "Report", module = "mnv", frozen)]
struct PyReport {
    inner: BoundReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn kind(&self) -> &str {
        self.inner.kind
    }

    #[getter]
    fn instance(&self) -> &str {
        &self.inner.instance
    }

    /// Measured quantities as strings.
    #[getter]
    fn measured(&self) -> BTreeMap<String, String> {
        self.inner.measured.iter().cloned().collect()
    }

    /// `(name, lhs, relation, rhs, passed)` for each check.
    #[getter]
    fn checks(&self) -> Vec<(String, i64, &'static str, i64, bool)> {
        self.inner
            .checks
            .iter()
            .map(|c| {
                let rel = match c.relation {
                    Relation::Le => "<=",
                    Relation::Eq => "==",
                };
                (c.name.clone(), c.lhs, rel, c.rhs, c.pass)
            })
            .collect()
    }

    fn to_text(&self) -> String {
        self.inner.to_report_v1()
    }

    fn __repr__(&self) -> String {
        format!("Report(kind={}, passed={})", self.inner.kind, self.inner.passed())
    }
}

#[derive(FromPyObject)]
enum Endpoint {
    Int(i64),
    Text(String),
}

impl Endpoint {
    fn rational(&self) -> PyResult<Rational> {
        match self {
            Endpoint::Int(v) => Ok(Rational::from_integer(*v)),
            Endpoint::Text(t) => io::parse_rational(0, t).map_err(value_error),
        }
    }
}

/// A finite family of open sets: subcomplexes of a triangulation, or unions
/// of open axis-parallel boxes with rational corners.
#[pyclass(name = "Family", module = "mnv", frozen)]
struct PyFamily {
    inner: SetFamily,
}

#[pymethods]
impl PyFamily {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_family(text).map(|inner| PyFamily { inner }).map_err(value_error)
    }

    /// Members are lists of boxes; a box is a list of `(lo, hi)` pairs, one
    /// per axis, with integer or `"p/q"` endpoints.
    #[staticmethod]
    fn boxes(dim: usize, members: Vec<Vec<Vec<(Endpoint, Endpoint)>>>) -> PyResult<Self> {
        let mut fam = Vec::with_capacity(members.len());
        for member in members {
            let mut boxes = Vec::with_capacity(member.len());
            for b in member {
                let mut lo = Vec::with_capacity(b.len());
                let mut hi = Vec::with_capacity(b.len());
                for (l, h) in &b {
                    lo.push(l.rational()?);
                    hi.push(h.rational()?);
                }
                boxes.push(OpenBox::new(lo, hi).map_err(family_error)?);
            }
            fam.push(boxes);
        }
        SetFamily::boxes(dim, fam).map(|inner| PyFamily { inner }).map_err(family_error)
    }

    /// Members of the complex generated by `facets`, each given by the
    /// simplices it contains (faces are added).
    #[staticmethod]
    fn subcomplex(facets: Vec<Vec<u32>>, members: Vec<Vec<Vec<u32>>>) -> PyResult<Self> {
        let ambient = SimplicialComplex::from_facets(facets).map_err(value_error)?;
        let mut ids = Vec::with_capacity(members.len());
        for member in members {
            let closure = SimplicialComplex::from_facets(member).map_err(value_error)?;
            let mut m = Vec::with_capacity(closure.len());
            for s in closure.simplices() {
                m.push(ambient.id_of(s).ok_or_else(|| value_error(format!("simplex {s:?} is not in the ambient complex")))?);
            }
            ids.push(m);
        }
        SetFamily::subcomplex(ambient, ids).map(|inner| PyFamily { inner }).map_err(family_error)
    }

    #[staticmethod]
    #[pyo3(signature = (members = 4, dim = 1, boxes = 2, extent = 6, seed = 0))]
    fn random_boxes(members: usize, dim: usize, boxes: usize, extent: i64, seed: u64) -> PyResult<Self> {
        let spec = RandomSpec::Boxes {
            members,
            dim,
            boxes_per_member: boxes,
            extent,
        };
        verify::random_family(&spec, seed).map(|inner| PyFamily { inner }).map_err(verify_error)
    }

    #[staticmethod]
    #[pyo3(signature = (members = 4, grid = 6, stars = 2, rings = false, seed = 0))]
    fn random_subcomplex(members: usize, grid: usize, stars: usize, rings: bool, seed: u64) -> PyResult<Self> {
        let spec = RandomSpec::Subcomplex {
            members,
            grid,
            stars_per_member: stars,
            rings,
        };
        verify::random_family(&spec, seed).map(|inner| PyFamily { inner }).map_err(verify_error)
    }

    fn to_text(&self) -> String {
        io::write_family(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Family(members={}, gamma_dim={})", self.inner.len(), self.inner.gamma_dim())
    }

    #[getter]
    fn gamma_dim(&self) -> usize {
        self.inner.gamma_dim()
    }

    /// Replaces the ambient dimension bound; it is then reported as assumed.
    fn with_gamma_dim(&self, gamma_dim: usize) -> PyResult<Self> {
        self.inner.clone().with_gamma_dim(gamma_dim).map(|inner| PyFamily { inner }).map_err(family_error)
    }

    /// Number of connected components of the intersection of `members`
    /// (of the union when empty).
    fn components(&self, members: Vec<usize>) -> PyResult<usize> {
        self.inner.num_components(&sorted(members)).map_err(family_error)
    }

    fn region_betti(&self, members: Vec<usize>) -> PyResult<BTreeMap<i32, usize>> {
        self.inner.region_betti(&sorted(members)).map(|b| betti_dict(&b)).map_err(family_error)
    }

    fn is_acyclic(&self, s: usize) -> PyResult<bool> {
        self.inner.is_acyclic_with_slack(s).map(|a| a.holds).map_err(family_error)
    }

    fn min_slack(&self) -> PyResult<usize> {
        self.inner.min_slack().map_err(family_error)
    }

    /// `(h, witness)` for a family with empty intersection.
    fn helly_number(&self) -> PyResult<(usize, Vec<usize>)> {
        verify::helly_number(&self.inner, HellyMode::Exhaustive).map(|h| (h.h, h.witness)).map_err(verify_error)
    }

    fn nerve(&self) -> PyResult<PyPoset> {
        nerve::nerve_poset(&self.inner).map(PyPoset::labeled).map_err(family_error)
    }

    /// The multinerve, or with `t` the reduced multinerve.
    #[pyo3(signature = (t = None))]
    fn multinerve(&self, py: Python<'_>, t: Option<usize>) -> PyResult<PyPoset> {
        if t == Some(0) {
            return Err(value_error("t must be at least 1"));
        }
        let m = py.detach(|| match t {
            None => nerve::multinerve(&self.inner),
            Some(t) => nerve::reduced_multinerve(&self.inner, t).map(|(m, _)| m),
        });
        m.map(PyPoset::labeled).map_err(family_error)
    }

    #[pyo3(signature = (s = 0))]
    fn verify_multinerve(&self, py: Python<'_>, s: usize) -> PyResult<PyReport> {
        py.detach(|| verify::verify_multinerve_homology(&self.inner, s)).map(|inner| PyReport { inner }).map_err(verify_error)
    }

    #[pyo3(signature = (t = 1, s = None, cap = leray::DEFAULT_CAP, sample = None, seed = 0))]
    fn verify_projection(
        &self,
        py: Python<'_>,
        t: usize,
        s: Option<usize>,
        cap: usize,
        sample: Option<usize>,
        seed: u64,
    ) -> PyResult<PyReport> {
        let cfg = config(cap, sample, seed);
        py.detach(|| verify::verify_projection_bound(&self.inner, t, s, &cfg))
            .map(|inner| PyReport { inner })
            .map_err(verify_error)
    }

    #[pyo3(signature = (s = 0, t = 1, cap = leray::DEFAULT_CAP))]
    fn verify_helly(&self, py: Python<'_>, s: usize, t: usize, cap: usize) -> PyResult<PyReport> {
        let cfg = config(cap, None, 0);
        py.detach(|| verify::verify_helly_bound(&self.inner, s, t, HellyMode::Exhaustive, &cfg))
            .map(|inner| PyReport { inner })
            .map_err(verify_error)
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

#[pymodule]
fn mnv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoset>()?;
    m.add_class::<PyLeray>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyFamily>()?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
