//! Simplicial posets and simplicial complexes.
//!
//! A [`SimplicialPoset`] stores every cell with an explicit, ordered list of
//! facets. Facet `i` of an `n`-cell is the face that omits the `i`-th smallest
//! vertex of the cell, where vertices are ordered by declaration order. The
//! unique `(-1)`-cell (the least element) always has id `0`.
//!
//! Several cells may share a vertex set (a double edge is a valid poset), which
//! is why cells are not keyed by their vertices.

mod complex;
mod iso;
mod order;

pub use complex::{ComplexError, SimplicialComplex};
pub use iso::is_isomorphic;
pub use order::{barycentric_subdivision, order_complex, upper_complexes};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Handle of a cell inside one [`SimplicialPoset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId(pub u32);

impl CellId {
    pub const LEAST: CellId = CellId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A cell as it appears in an input file: arbitrary numeric id, dimension,
/// and the ids of its facets (in any order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCell {
    pub id: u64,
    pub dim: i32,
    pub faces: Vec<u64>,
}

impl RawCell {
    pub fn new(id: u64, dim: i32, faces: Vec<u64>) -> Self {
        RawCell { id, dim, faces }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("cell {cell}: id declared twice")]
    DuplicateId { cell: u64 },
    #[error("cell {cell}: invalid dimension {dim}")]
    InvalidDimension { cell: u64, dim: i32 },
    #[error("cell {cell}: a second (-1)-dimensional cell; the least element must be unique")]
    DuplicateLeast { cell: u64 },
    #[error("cell {cell}: the (-1)-dimensional cell cannot have faces")]
    LeastWithFaces { cell: u64 },
    #[error("cell {cell}: refers to a least element but none was declared")]
    MissingLeast { cell: u64 },
    #[error("cell {cell}: face {face} is not a previously declared cell")]
    DanglingFace { cell: u64, face: u64 },
    #[error("cell {cell}: expected {expected} faces, found {found}")]
    WrongFaceCount { cell: u64, expected: usize, found: usize },
    #[error("cell {cell}: face {face} has dimension {found}, expected {expected}")]
    FaceDimension {
        cell: u64,
        face: u64,
        expected: i32,
        found: i32,
    },
    #[error("cell {cell}: repeated vertex")]
    RepeatedVertex { cell: u64 },
    #[error("cell {cell}: two faces have the same vertex set")]
    DuplicateFace { cell: u64 },
    #[error("cell {cell}: simplicial identity d_{i} d_{j} = d_{jm1} d_{i} fails", jm1 = .j - 1)]
    SimplicialIdentity { cell: u64, i: usize, j: usize },
    #[error("cell {cell} is not a cell of this poset")]
    UnknownCell { cell: u64 },
    #[error("cell {cell} is not a vertex of this poset")]
    UnknownVertex { cell: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cell {
    dim: i32,
    faces: Vec<CellId>,
    /// Sorted by vertex order (which coincides with `CellId` order).
    vertices: Vec<CellId>,
}

/// A validated simplicial poset. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPoset {
    cells: Vec<Cell>,
    vertex_list: Vec<CellId>,
    max_dim: i32,
}

impl SimplicialPoset {
    /// The poset whose only cell is the least element; it realizes the empty space.
    pub fn empty() -> Self {
        SimplicialPoset {
            cells: vec![Cell {
                dim: -1,
                faces: Vec::new(),
                vertices: Vec::new(),
            }],
            vertex_list: Vec::new(),
            max_dim: -1,
        }
    }

    /// Builds and validates a poset from raw records.
    ///
    /// Records may only reference previously declared cells. A `(-1)`-cell may
    /// be declared explicitly; otherwise it is implied. Vertices list either no
    /// face or exactly the least element. Facets of higher cells may be given
    /// in any order and are stored in canonical order.
    pub fn build(records: &[RawCell]) -> Result<Self, PosetError> {
        let mut poset = SimplicialPoset::empty();
        let mut ids: HashMap<u64, CellId> = HashMap::new();
        let mut least_declared: Option<u64> = None;

        for rec in records {
            if ids.contains_key(&rec.id) || least_declared == Some(rec.id) {
                return Err(PosetError::DuplicateId { cell: rec.id });
            }
            match rec.dim {
                d if d < -1 => {
                    return Err(PosetError::InvalidDimension {
                        cell: rec.id,
                        dim: d,
                    })
                }
                -1 => {
                    if least_declared.is_some() {
                        return Err(PosetError::DuplicateLeast { cell: rec.id });
                    }
                    if !rec.faces.is_empty() {
                        return Err(PosetError::LeastWithFaces { cell: rec.id });
                    }
                    least_declared = Some(rec.id);
                    ids.insert(rec.id, CellId::LEAST);
                }
                0 => {
                    match rec.faces.as_slice() {
                        [] => {}
                        [f] => match ids.get(f) {
                            Some(&c) if c == CellId::LEAST => {}
                            Some(&c) => {
                                return Err(PosetError::FaceDimension {
                                    cell: rec.id,
                                    face: *f,
                                    expected: -1,
                                    found: poset.cells[c.index()].dim,
                                })
                            }
                            None if least_declared.is_none() => {
                                return Err(PosetError::MissingLeast { cell: rec.id })
                            }
                            None => {
                                return Err(PosetError::DanglingFace {
                                    cell: rec.id,
                                    face: *f,
                                })
                            }
                        },
                        more => {
                            return Err(PosetError::WrongFaceCount {
                                cell: rec.id,
                                expected: 1,
                                found: more.len(),
                            })
                        }
                    }
                    let id = poset.push_vertex();
                    ids.insert(rec.id, id);
                }
                dim => {
                    let mut faces = Vec::with_capacity(rec.faces.len());
                    for f in &rec.faces {
                        let c = *ids.get(f).ok_or(PosetError::DanglingFace {
                            cell: rec.id,
                            face: *f,
                        })?;
                        faces.push(c);
                    }
                    let id = poset.push_cell(rec.id, dim, faces)?;
                    ids.insert(rec.id, id);
                }
            }
        }
        Ok(poset)
    }

    fn push_vertex(&mut self) -> CellId {
        let id = CellId(self.cells.len() as u32);
        self.cells.push(Cell {
            dim: 0,
            faces: vec![CellId::LEAST],
            vertices: vec![id],
        });
        self.vertex_list.push(id);
        self.max_dim = self.max_dim.max(0);
        id
    }

    /// Appends a cell of dimension >= 1 after validating it. `raw` is only used
    /// to name the cell in errors.
    fn push_cell(&mut self, raw: u64, dim: i32, faces: Vec<CellId>) -> Result<CellId, PosetError> {
        let n = dim as usize;
        if faces.len() != n + 1 {
            return Err(PosetError::WrongFaceCount {
                cell: raw,
                expected: n + 1,
                found: faces.len(),
            });
        }
        for &f in &faces {
            let fd = self.cells[f.index()].dim;
            if fd != dim - 1 {
                return Err(PosetError::FaceDimension {
                    cell: raw,
                    face: f.0 as u64,
                    expected: dim - 1,
                    found: fd,
                });
            }
        }
        let mut vertices: Vec<CellId> = faces
            .iter()
            .flat_map(|f| self.cells[f.index()].vertices.iter().copied())
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != n + 1 {
            return Err(PosetError::RepeatedVertex { cell: raw });
        }
        // Place each facet at the index of the vertex it omits.
        let mut ordered: Vec<Option<CellId>> = vec![None; n + 1];
        for &f in &faces {
            let fv = &self.cells[f.index()].vertices;
            let missing = vertices
                .iter()
                .position(|v| fv.binary_search(v).is_err())
                .expect("facet has one vertex fewer than the cell");
            if ordered[missing].replace(f).is_some() {
                return Err(PosetError::DuplicateFace { cell: raw });
            }
        }
        let faces: Vec<CellId> = ordered.into_iter().map(|f| f.unwrap()).collect();
        if dim >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    let a = self.cells[faces[j].index()].faces[i];
                    let b = self.cells[faces[i].index()].faces[j - 1];
                    if a != b {
                        return Err(PosetError::SimplicialIdentity { cell: raw, i, j });
                    }
                }
            }
        }
        let id = CellId(self.cells.len() as u32);
        self.cells.push(Cell {
            dim,
            faces,
            vertices,
        });
        self.max_dim = self.max_dim.max(dim);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    /// True when the poset has no cell besides the least element.
    pub fn is_empty(&self) -> bool {
        self.cells.len() == 1
    }

    pub fn least(&self) -> CellId {
        CellId::LEAST
    }

    pub fn max_dim(&self) -> i32 {
        self.max_dim
    }

    pub fn cell_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len() as u32).map(CellId)
    }

    pub fn contains(&self, c: CellId) -> bool {
        c.index() < self.cells.len()
    }

    fn check(&self, c: CellId) -> Result<(), PosetError> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(PosetError::UnknownCell { cell: c.0 as u64 })
        }
    }

    pub fn dim(&self, c: CellId) -> i32 {
        self.cells[c.index()].dim
    }

    /// Facets in canonical order: entry `i` omits the `i`-th smallest vertex.
    /// Vertices report the least element as their only facet; the least element
    /// has none.
    pub fn faces(&self, c: CellId) -> &[CellId] {
        &self.cells[c.index()].faces
    }

    /// Sorted vertices of `c` (empty for the least element).
    pub fn vertices(&self, c: CellId) -> &[CellId] {
        &self.cells[c.index()].vertices
    }

    /// Checked variant of [`Self::vertices`].
    pub fn vertices_of(&self, c: CellId) -> Result<&[CellId], PosetError> {
        self.check(c)?;
        Ok(self.vertices(c))
    }

    /// Vertices in vertex order.
    pub fn vertex_list(&self) -> &[CellId] {
        &self.vertex_list
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_list.len()
    }

    pub fn cells_of_dim(&self, dim: i32) -> impl Iterator<Item = CellId> + '_ {
        self.cell_ids().filter(move |&c| self.dim(c) == dim)
    }

    /// Counts cells per dimension, index `n + 1` for dimension `n`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; (self.max_dim + 2) as usize];
        for c in &self.cells {
            f[(c.dim + 1) as usize] += 1;
        }
        f
    }

    /// The unique face of `c` whose vertex set is `subset`, if `subset` is a
    /// subset of the vertices of `c`.
    pub fn face_with_vertices(&self, c: CellId, subset: &[CellId]) -> Option<CellId> {
        let mut cur = c;
        loop {
            let verts = self.vertices(cur);
            if verts.len() == subset.len() {
                return (verts == subset).then_some(cur);
            }
            // Drop the first vertex of `cur` that is not in `subset`.
            let i = verts.iter().position(|v| subset.binary_search(v).is_err())?;
            cur = self.cells[cur.index()].faces[i];
        }
    }

    /// `a <= b` in the face order.
    pub fn is_below(&self, a: CellId, b: CellId) -> bool {
        if self.dim(a) > self.dim(b) {
            return false;
        }
        self.face_with_vertices(b, self.vertices(a)) == Some(a)
    }

    /// All cells of the lower segment `[0, c]`, listed by enumerating subsets
    /// of the vertices of `c`.
    pub fn lower_segment(&self, c: CellId) -> Vec<CellId> {
        let verts = self.vertices(c);
        let k = verts.len();
        let mut out = Vec::with_capacity(1 << k);
        let mut subset = Vec::with_capacity(k);
        for mask in 0u64..(1u64 << k) {
            subset.clear();
            subset.extend((0..k).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]));
            out.push(
                self.face_with_vertices(c, &subset)
                    .expect("every vertex subset names a face"),
            );
        }
        out
    }

    /// For every cell, the sorted list of cells above or equal to it.
    pub fn upper_sets(&self) -> Vec<Vec<CellId>> {
        let mut above: Vec<Vec<CellId>> = vec![Vec::new(); self.len()];
        for c in self.cell_ids() {
            for f in self.lower_segment(c) {
                above[f.index()].push(c);
            }
        }
        for a in &mut above {
            a.sort_unstable();
        }
        above
    }

    /// The sub-poset of cells whose vertices all lie in `vertices`. Cells keep
    /// their relative order; ids are renumbered.
    pub fn induced_subposet(&self, vertices: &[CellId]) -> Result<SimplicialPoset, PosetError> {
        let mut keep = vec![false; self.len()];
        for &v in vertices {
            if !self.contains(v) || self.dim(v) != 0 {
                return Err(PosetError::UnknownVertex { cell: v.0 as u64 });
            }
            keep[v.index()] = true;
        }
        Ok(self.restrict(|c| self.vertices(c).iter().all(|v| keep[v.index()])).0)
    }

    /// Restricts to a downward-closed set of cells. Returns the new poset and
    /// the map old id -> new id.
    pub(crate) fn restrict(&self, keep: impl Fn(CellId) -> bool) -> (SimplicialPoset, Vec<Option<CellId>>) {
        let mut map: Vec<Option<CellId>> = vec![None; self.len()];
        let mut out = SimplicialPoset::empty();
        map[0] = Some(CellId::LEAST);
        for c in self.cell_ids().skip(1) {
            if !keep(c) {
                continue;
            }
            let id = CellId(out.cells.len() as u32);
            let cell = &self.cells[c.index()];
            let faces: Vec<CellId> = cell
                .faces
                .iter()
                .map(|f| map[f.index()].expect("kept cells form a lower set"))
                .collect();
            map[c.index()] = Some(id);
            let vertices: Vec<CellId> = cell.vertices.iter().map(|v| map[v.index()].unwrap()).collect();
            if cell.dim == 0 {
                out.vertex_list.push(id);
            }
            out.max_dim = out.max_dim.max(cell.dim);
            out.cells.push(Cell {
                dim: cell.dim,
                faces,
                vertices,
            });
        }
        (out, map)
    }

    /// Exports raw records, least element first, ids equal to cell indices.
    pub fn to_records(&self) -> Vec<RawCell> {
        self.cell_ids()
            .map(|c| {
                let faces = if self.dim(c) < 0 {
                    Vec::new()
                } else {
                    self.faces(c).iter().map(|f| f.0 as u64).collect()
                };
                RawCell::new(c.0 as u64, self.dim(c), faces)
            })
            .collect()
    }

    /// Rebuilds the poset with `order` as the new vertex order. Returns the
    /// rebuilt poset and the map old id -> new id.
    pub fn reorder_vertices(&self, order: &[CellId]) -> Result<(SimplicialPoset, Vec<CellId>), PosetError> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != self.vertex_list {
            let bad = order
                .iter()
                .find(|v| !self.contains(**v) || self.dim(**v) != 0)
                .or_else(|| self.vertex_list.first())
                .map(|v| v.0 as u64)
                .unwrap_or(0);
            return Err(PosetError::UnknownVertex { cell: bad });
        }
        let mut records = vec![RawCell::new(0, -1, vec![])];
        for v in order {
            records.push(RawCell::new(v.0 as u64, 0, vec![0]));
        }
        for c in self.cell_ids().filter(|&c| self.dim(c) > 0) {
            records.push(RawCell::new(
                c.0 as u64,
                self.dim(c),
                self.faces(c).iter().map(|f| f.0 as u64).collect(),
            ));
        }
        let rebuilt = SimplicialPoset::build(&records)?;
        let mut map = vec![CellId::LEAST; self.len()];
        for (new, rec) in records.iter().enumerate() {
            map[rec.id as usize] = CellId(new as u32);
        }
        Ok((rebuilt, map))
    }

    /// Whether every cell is determined by its vertex set.
    pub fn is_complex(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.cells.iter().all(|c| seen.insert(c.vertices.clone()))
    }

    /// Whether the poset is a single simplex with all of its faces (the
    /// empty poset counts as the (-1)-simplex).
    pub fn is_simplex(&self) -> bool {
        let n = self.num_vertices();
        n < 64 && self.len() == 1usize << n && self.is_complex()
    }
}
