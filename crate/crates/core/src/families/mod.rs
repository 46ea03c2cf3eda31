//! Finite set families with an exact oracle for the connected components and
//! homology of sub-family intersections.
//!
//! Two backends are supported: members that are subcomplexes of one ambient
//! triangulation, and members that are finite unions of open rational boxes in
//! `R^d`. Sub-families are given as sets of member indices; the empty set
//! stands for the union of all members.

pub mod boxes;
pub mod grid;
pub mod union_find;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

pub use boxes::{OpenBox, Rational};
pub use grid::{boxes_to_grid, grid_triangulation};
use union_find::UnionFind;

use crate::homology::{reduced_betti, BettiVector};
use crate::poset::SimplicialComplex;

/// Families larger than this are refused by the exhaustive sub-family scans.
pub const MAX_MEMBERS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown member index {index} (family has {len} members)")]
    UnknownMember { index: usize, len: usize },
    #[error("invalid box: {reason}")]
    InvalidBox { reason: String },
    #[error("member {member}: box has dimension {found}, expected {expected}")]
    BoxDimension { member: usize, found: usize, expected: usize },
    #[error("member {member}: unknown simplex id {simplex}")]
    UnknownSimplex { member: usize, simplex: usize },
    #[error("member {member}: simplex {simplex} is present but its face {face} is not")]
    NotFaceClosed { member: usize, simplex: usize, face: usize },
    #[error("gamma dimension must be at least 1")]
    InvalidGammaDim,
    #[error("representative does not lie in the intersection of {members:?}")]
    RepNotInRegion { members: Vec<usize> },
    #[error("operation requires the other backend")]
    WrongBackend,
    #[error("{members} members exceed the sub-family enumeration cap of {cap}")]
    TooManyMembers { members: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Subcomplex,
    Box,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Subcomplex => "subcomplex",
            Backend::Box => "box",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Members {
    /// Sorted simplex ids of the ambient triangulation.
    Subcomplex { ambient: SimplicialComplex, members: Vec<Vec<usize>> },
    Box { dim: usize, members: Vec<Vec<OpenBox>> },
}

/// A point-like witness inside a region: a simplex of the ambient
/// triangulation or one of the constituent boxes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rep {
    Simplex(usize),
    Box(OpenBox),
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rep::Simplex(s) => write!(f, "s{s}"),
            Rep::Box(b) => write!(f, "{b}"),
        }
    }
}

/// A connected component of `⋂_A`: its canonical id is the smallest element
/// (simplex id, or constituent index for boxes) it contains, and `rep` is that
/// element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentLabel {
    pub id: usize,
    pub rep: Rep,
}

/// The intersection `⋂_A` with its components.
#[derive(Debug)]
struct Region {
    /// Subcomplex: sorted simplex ids. Box: constituent boxes.
    simplices: Vec<usize>,
    boxes: Vec<OpenBox>,
    component_of: Vec<usize>,
    components: Vec<ComponentLabel>,
    betti: OnceLock<BettiVector>,
}

impl Region {
    fn is_empty(&self) -> bool {
        self.component_of.is_empty()
    }
}

/// Outcome of an acyclicity-with-slack check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acyclicity {
    pub holds: bool,
    /// First `(G, i)` with `β̃_i(⋂_G) ≠ 0` and `i ≥ max(1, s - |G|)`, ordered
    /// by `(|G|, G, i)`.
    pub violation: Option<(Vec<usize>, i32)>,
}

/// Component counts of sub-family intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTable {
    /// `per_size[k]`: maximum number of components of `⋂_G` over `|G| = k`.
    /// Entry 0 is the number of components of the union.
    pub per_size: Vec<usize>,
    /// Maximum over `|G| >= t`.
    pub r: usize,
    pub t: usize,
}

pub struct SetFamily {
    members: Members,
    gamma_dim: usize,
    gamma_dim_assumed: bool,
    cache: Mutex<HashMap<Vec<usize>, Arc<Region>>>,
}

impl Clone for SetFamily {
    fn clone(&self) -> Self {
        SetFamily {
            members: self.members.clone(),
            gamma_dim: self.gamma_dim,
            gamma_dim_assumed: self.gamma_dim_assumed,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetFamily")
            .field("members", &self.members)
            .field("gamma_dim", &self.gamma_dim)
            .finish()
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.gamma_dim == other.gamma_dim
    }
}

impl SetFamily {
    /// Members given as simplex ids of `ambient`; each must be closed under
    /// faces. `d_Γ` defaults to `dim T + 1`.
    pub fn subcomplex(ambient: SimplicialComplex, members: Vec<Vec<usize>>) -> Result<Self, FamilyError> {
        let mut clean = Vec::with_capacity(members.len());
        for (m, mut ids) in members.into_iter().enumerate() {
            ids.sort_unstable();
            ids.dedup();
            if let Some(&bad) = ids.iter().find(|&&s| s >= ambient.len()) {
                return Err(FamilyError::UnknownSimplex { member: m, simplex: bad });
            }
            for &s in &ids {
                let verts = &ambient.simplices()[s];
                if verts.len() < 2 {
                    continue;
                }
                for i in 0..verts.len() {
                    let mut face = verts.clone();
                    face.remove(i);
                    let f = ambient.id_of(&face).expect("ambient complex is closed");
                    if ids.binary_search(&f).is_err() {
                        return Err(FamilyError::NotFaceClosed {
                            member: m,
                            simplex: s,
                            face: f,
                        });
                    }
                }
            }
            clean.push(ids);
        }
        let gamma_dim = (ambient.dim() + 1).max(1) as usize;
        Ok(Self::from_members(
            Members::Subcomplex {
                ambient,
                members: clean,
            },
            gamma_dim,
        ))
    }

    /// Members given as unions of open boxes in `R^dim`. `d_Γ = dim`.
    pub fn boxes(dim: usize, members: Vec<Vec<OpenBox>>) -> Result<Self, FamilyError> {
        if dim == 0 {
            return Err(FamilyError::InvalidBox {
                reason: "ambient dimension 0".into(),
            });
        }
        for (m, bs) in members.iter().enumerate() {
            if let Some(b) = bs.iter().find(|b| b.dim() != dim) {
                return Err(FamilyError::BoxDimension {
                    member: m,
                    found: b.dim(),
                    expected: dim,
                });
            }
        }
        Ok(Self::from_members(Members::Box { dim, members }, dim))
    }

    fn from_members(members: Members, gamma_dim: usize) -> Self {
        SetFamily {
            members,
            gamma_dim,
            gamma_dim_assumed: false,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Overrides `d_Γ`. The value is not checked against the ambient space
    /// and is reported as assumed.
    pub fn with_gamma_dim(mut self, gamma_dim: usize) -> Result<Self, FamilyError> {
        if gamma_dim == 0 {
            return Err(FamilyError::InvalidGammaDim);
        }
        self.gamma_dim = gamma_dim;
        self.gamma_dim_assumed = true;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        match &self.members {
            Members::Subcomplex { members, .. } => members.len(),
            Members::Box { members, .. } => members.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn backend(&self) -> Backend {
        match &self.members {
            Members::Subcomplex { .. } => Backend::Subcomplex,
            Members::Box { .. } => Backend::Box,
        }
    }

    pub fn gamma_dim(&self) -> usize {
        self.gamma_dim
    }

    pub fn gamma_dim_is_assumed(&self) -> bool {
        self.gamma_dim_assumed
    }

    pub fn ambient(&self) -> Option<&SimplicialComplex> {
        match &self.members {
            Members::Subcomplex { ambient, .. } => Some(ambient),
            Members::Box { .. } => None,
        }
    }

    pub fn box_dim(&self) -> Option<usize> {
        match &self.members {
            Members::Box { dim, .. } => Some(*dim),
            Members::Subcomplex { .. } => None,
        }
    }

    pub fn subcomplex_member(&self, i: usize) -> Option<&[usize]> {
        match &self.members {
            Members::Subcomplex { members, .. } => members.get(i).map(|m| m.as_slice()),
            Members::Box { .. } => None,
        }
    }

    pub fn box_member(&self, i: usize) -> Option<&[OpenBox]> {
        match &self.members {
            Members::Box { members, .. } => members.get(i).map(|m| m.as_slice()),
            Members::Subcomplex { .. } => None,
        }
    }

    /// The sub-family keeping the given members, in the given order.
    pub fn subfamily(&self, keep: &[usize]) -> Result<SetFamily, FamilyError> {
        let keep = self.normalize(keep)?;
        let members = match &self.members {
            Members::Subcomplex { ambient, members } => Members::Subcomplex {
                ambient: ambient.clone(),
                members: keep.iter().map(|&i| members[i].clone()).collect(),
            },
            Members::Box { dim, members } => Members::Box {
                dim: *dim,
                members: keep.iter().map(|&i| members[i].clone()).collect(),
            },
        };
        let mut out = Self::from_members(members, self.gamma_dim);
        out.gamma_dim_assumed = self.gamma_dim_assumed;
        Ok(out)
    }

    fn normalize(&self, a: &[usize]) -> Result<Vec<usize>, FamilyError> {
        let mut a = a.to_vec();
        a.sort_unstable();
        a.dedup();
        if let Some(&bad) = a.iter().find(|&&i| i >= self.len()) {
            return Err(FamilyError::UnknownMember {
                index: bad,
                len: self.len(),
            });
        }
        Ok(a)
    }

    fn region(&self, a: &[usize]) -> Result<Arc<Region>, FamilyError> {
        let a = self.normalize(a)?;
        if let Some(r) = self.cache.lock().unwrap().get(&a) {
            return Ok(r.clone());
        }
        let region = Arc::new(self.compute_region(&a));
        self.cache.lock().unwrap().entry(a).or_insert_with(|| region.clone());
        Ok(region)
    }

    fn compute_region(&self, a: &[usize]) -> Region {
        match &self.members {
            Members::Subcomplex { ambient, members } => {
                let simplices: Vec<usize> = if a.is_empty() {
                    let mut all: Vec<usize> = members.iter().flatten().copied().collect();
                    all.sort_unstable();
                    all.dedup();
                    all
                } else {
                    let mut cur = members[a[0]].clone();
                    for &i in &a[1..] {
                        let other = &members[i];
                        cur.retain(|s| other.binary_search(s).is_ok());
                    }
                    cur
                };
                // union-find on vertex labels
                let mut label: HashMap<u32, usize> = HashMap::new();
                for &s in &simplices {
                    for &v in &ambient.simplices()[s] {
                        let n = label.len();
                        label.entry(v).or_insert(n);
                    }
                }
                let mut uf = UnionFind::new(label.len());
                for &s in &simplices {
                    let verts = &ambient.simplices()[s];
                    for w in verts.windows(2) {
                        uf.union(label[&w[0]], label[&w[1]]);
                    }
                }
                let roots: Vec<usize> = simplices.iter().map(|&s| uf.find(label[&ambient.simplices()[s][0]])).collect();
                let (component_of, components) = canonical_components(&roots, |k| Rep::Simplex(simplices[k]), |k| simplices[k]);
                Region {
                    simplices,
                    boxes: Vec::new(),
                    component_of,
                    components,
                    betti: OnceLock::new(),
                }
            }
            Members::Box { members, .. } => {
                let boxes: Vec<OpenBox> = if a.is_empty() {
                    members.iter().flatten().cloned().collect()
                } else {
                    let mut cur = members[a[0]].clone();
                    for &i in &a[1..] {
                        let mut next = Vec::new();
                        for x in &cur {
                            for y in &members[i] {
                                if let Some(z) = x.intersect(y) {
                                    next.push(z);
                                }
                            }
                        }
                        cur = next;
                    }
                    cur
                };
                let mut uf = UnionFind::new(boxes.len());
                for i in 0..boxes.len() {
                    for j in i + 1..boxes.len() {
                        if boxes[i].overlaps(&boxes[j]) {
                            uf.union(i, j);
                        }
                    }
                }
                let roots: Vec<usize> = (0..boxes.len()).map(|i| uf.find(i)).collect();
                let (component_of, components) = canonical_components(&roots, |k| Rep::Box(boxes[k].clone()), |k| k);
                Region {
                    simplices: Vec::new(),
                    boxes,
                    component_of,
                    components,
                    betti: OnceLock::new(),
                }
            }
        }
    }

    /// True when `⋂_A` is empty (for `A = ∅`: when the union is empty).
    pub fn intersection_is_empty(&self, a: &[usize]) -> Result<bool, FamilyError> {
        Ok(self.region(a)?.is_empty())
    }

    /// Components of `⋂_A`, ordered by canonical id.
    pub fn components(&self, a: &[usize]) -> Result<Vec<ComponentLabel>, FamilyError> {
        Ok(self.region(a)?.components.clone())
    }

    pub fn num_components(&self, a: &[usize]) -> Result<usize, FamilyError> {
        Ok(self.region(a)?.components.len())
    }

    /// The component of `⋂_A` containing `rep`.
    pub fn component_containing(&self, a: &[usize], rep: &Rep) -> Result<ComponentLabel, FamilyError> {
        let region = self.region(a)?;
        let not_found = || FamilyError::RepNotInRegion { members: a.to_vec() };
        let k = match rep {
            Rep::Simplex(s) => region.simplices.binary_search(s).map_err(|_| not_found())?,
            Rep::Box(b) => region.boxes.iter().position(|x| x.overlaps(b)).ok_or_else(not_found)?,
        };
        Ok(region.components[region.component_of[k]].clone())
    }

    /// Reduced Betti numbers of `⋂_A` (of the union for `A = ∅`).
    ///
    /// Boxes: homology of the nerve of the constituent boxes. Open boxes form
    /// a good cover and pairwise-meeting boxes have a common point, so the
    /// nerve is the clique complex of the overlap graph.
    pub fn region_betti(&self, a: &[usize]) -> Result<BettiVector, FamilyError> {
        let region = self.region(a)?;
        Ok(region.betti.get_or_init(|| self.compute_betti(&region)).clone())
    }

    fn compute_betti(&self, region: &Region) -> BettiVector {
        match &self.members {
            Members::Subcomplex { ambient, .. } => {
                let k = SimplicialComplex::from_simplices(region.simplices.iter().map(|&s| &ambient.simplices()[s]))
                    .expect("intersections of subcomplexes are subcomplexes");
                reduced_betti(&k)
            }
            Members::Box { .. } => reduced_betti(&clique_complex(&region.boxes)),
        }
    }

    /// The region `⋂_A` as a complex: the subcomplex itself, or the nerve of
    /// the constituent boxes.
    pub fn region_complex(&self, a: &[usize]) -> Result<SimplicialComplex, FamilyError> {
        let region = self.region(a)?;
        Ok(match &self.members {
            Members::Subcomplex { ambient, .. } => {
                SimplicialComplex::from_simplices(region.simplices.iter().map(|&s| &ambient.simplices()[s])).unwrap()
            }
            Members::Box { .. } => clique_complex(&region.boxes),
        })
    }

    fn check_enumerable(&self) -> Result<(), FamilyError> {
        if self.len() > MAX_MEMBERS {
            return Err(FamilyError::TooManyMembers {
                members: self.len(),
                cap: MAX_MEMBERS,
            });
        }
        Ok(())
    }

    /// All non-empty `A` with `⋂_A ≠ ∅`, ordered by `(|A|, A)`. These are the
    /// simplices of the nerve.
    pub fn intersecting_subsets(&self) -> Result<Vec<Vec<usize>>, FamilyError> {
        self.check_enumerable()?;
        let n = self.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut layer: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).filter(|a| !self.region(a).unwrap().is_empty()).collect();
        while !layer.is_empty() {
            let present: std::collections::HashSet<&Vec<usize>> = layer.iter().collect();
            let mut next = Vec::new();
            for a in &layer {
                for j in a.last().unwrap() + 1..n {
                    let mut b = a.clone();
                    b.push(j);
                    let faces_ok = (0..b.len() - 1).all(|skip| {
                        let f: Vec<usize> = b.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &x)| x).collect();
                        present.contains(&f)
                    });
                    if faces_ok && !self.region(&b).unwrap().is_empty() {
                        next.push(b);
                    }
                }
            }
            out.append(&mut layer);
            layer = next;
        }
        Ok(out)
    }

    /// Checks that every non-empty `G` and every `i ≥ max(1, s - |G|)` have
    /// `β̃_i(⋂_G) = 0`. Empty intersections pass vacuously.
    pub fn is_acyclic_with_slack(&self, s: usize) -> Result<Acyclicity, FamilyError> {
        for g in self.intersecting_subsets()? {
            let from = 1.max(s as i32 - g.len() as i32);
            let betti = self.region_betti(&g)?;
            let hit = betti.nonzero().find(|&(i, _)| i >= from);
            if let Some((i, _)) = hit {
                return Ok(Acyclicity {
                    holds: false,
                    violation: Some((g, i)),
                });
            }
        }
        Ok(Acyclicity {
            holds: true,
            violation: None,
        })
    }

    /// The least `s` for which the family is acyclic with slack `s`.
    pub fn min_slack(&self) -> Result<usize, FamilyError> {
        let mut s = 0usize;
        for g in self.intersecting_subsets()? {
            if let Some(top) = self.region_betti(&g)?.top() {
                if top >= 1 {
                    s = s.max(top as usize + g.len() + 1);
                }
            }
        }
        Ok(s)
    }

    /// Maximum number of components of `⋂_G` over `|G| ≥ t`, with the per-size
    /// table. Zero when no such `G` has a non-empty intersection.
    pub fn max_components(&self, t: usize) -> Result<ComponentTable, FamilyError> {
        let mut per_size = vec![0usize; self.len() + 1];
        per_size[0] = self.num_components(&[])?;
        for g in self.intersecting_subsets()? {
            let c = self.num_components(&g)?;
            per_size[g.len()] = per_size[g.len()].max(c);
        }
        let r = per_size.iter().enumerate().filter(|(k, _)| *k >= t.max(1)).map(|(_, &c)| c).max().unwrap_or(0);
        Ok(ComponentTable { per_size, r, t })
    }
}

/// Groups elements by root and labels each group by its smallest key.
fn canonical_components(
    roots: &[usize],
    rep: impl Fn(usize) -> Rep,
    key: impl Fn(usize) -> usize,
) -> (Vec<usize>, Vec<ComponentLabel>) {
    let mut best: HashMap<usize, usize> = HashMap::new();
    for (k, &r) in roots.iter().enumerate() {
        let e = best.entry(r).or_insert(k);
        if key(k) < key(*e) {
            *e = k;
        }
    }
    let mut firsts: Vec<(usize, usize)> = best.iter().map(|(&r, &k)| (key(k), r)).collect();
    firsts.sort_unstable();
    let index: HashMap<usize, usize> = firsts.iter().enumerate().map(|(i, &(_, r))| (r, i)).collect();
    let components = firsts.iter().map(|&(_, r)| {
        let k = best[&r];
        ComponentLabel { id: key(k), rep: rep(k) }
    });
    (roots.iter().map(|r| index[r]).collect(), components.collect())
}

/// Clique complex of the strict-overlap graph of `boxes`, on labels `0..n`.
pub fn clique_complex(boxes: &[OpenBox]) -> SimplicialComplex {
    let n = boxes.len();
    let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j && boxes[i].overlaps(&boxes[j])).collect()).collect();
    let mut cliques: Vec<Vec<u32>> = Vec::new();
    fn grow(adj: &[Vec<bool>], clique: &mut Vec<usize>, cands: &[usize], out: &mut Vec<Vec<u32>>) {
        out.push(clique.iter().map(|&v| v as u32).collect());
        for (k, &v) in cands.iter().enumerate() {
            let rest: Vec<usize> = cands[k + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
            clique.push(v);
            grow(adj, clique, &rest, out);
            clique.pop();
        }
    }
    for v in 0..n {
        let cands: Vec<usize> = (v + 1..n).filter(|&w| adj[v][w]).collect();
        grow(&adj, &mut vec![v], &cands, &mut cliques);
    }
    SimplicialComplex::from_simplices(cliques).expect("cliques are closed under subsets")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64, q: i64) -> OpenBox {
        OpenBox::from_ints(&[(lo, hi)], q).unwrap()
    }

    /// C4 with upper path 1-2-3 and lower path 3-0-1.
    pub(crate) fn c4_family() -> SetFamily {
        let t = SimplicialComplex::from_facets([[0u32, 1], [1, 2], [2, 3], [0, 3]]).unwrap();
        let ids = |ss: &[&[u32]]| ss.iter().map(|s| t.id_of(s).unwrap()).collect::<Vec<_>>();
        let upper = ids(&[&[1], &[2], &[3], &[1, 2], &[2, 3]]);
        let lower = ids(&[&[3], &[0], &[1], &[0, 3], &[0, 1]]);
        SetFamily::subcomplex(t.clone(), vec![upper, lower]).unwrap()
    }

    #[test]
    fn c4_components() {
        let f = c4_family();
        let comps = f.components(&[0, 1]).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(f.components(&[0]).unwrap().len(), 1);
        assert_eq!(f.gamma_dim(), 2);
        let c = f.component_containing(&[0], &Rep::Simplex(1)).unwrap();
        assert_eq!(c, f.components(&[0]).unwrap()[0]);
        assert_eq!(f.region_betti(&[]).unwrap(), BettiVector::from_values(vec![0, 0, 1]));
        assert!(f.is_acyclic_with_slack(0).unwrap().holds);
        assert_eq!(f.max_components(1).unwrap().r, 2);
        assert!(matches!(f.components(&[2]), Err(FamilyError::UnknownMember { index: 2, len: 2 })));
    }

    #[test]
    fn interval_union_components() {
        let f = SetFamily::boxes(1, vec![vec![iv(0, 2, 2), iv(4, 6, 2)], vec![iv(1, 5, 2)]]).unwrap();
        let comps = f.components(&[0, 1]).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].rep, Rep::Box(iv(1, 2, 2)));
        assert_eq!(comps[1].rep, Rep::Box(iv(4, 5, 2)));
        let c = f.component_containing(&[0], &comps[0].rep).unwrap();
        assert_eq!(c.rep, Rep::Box(iv(0, 2, 2)));
        assert_eq!(f.max_components(2).unwrap().r, 2);
        assert_eq!(f.max_components(1).unwrap().per_size, vec![1, 2, 2]);
        assert!(f.component_containing(&[0], &Rep::Box(iv(2, 3, 2))).is_err());
    }

    #[test]
    fn box_region_betti() {
        let sq = |x0, x1, y0, y1| vec![OpenBox::from_ints(&[(x0, x1), (y0, y1)], 1).unwrap()];
        let cross = SetFamily::boxes(2, vec![sq(0, 3, 1, 2), sq(1, 2, 0, 3)]).unwrap();
        assert!(cross.region_betti(&[0, 1]).unwrap().is_zero());
        let ring = SetFamily::boxes(2, vec![sq(0, 3, 0, 1), sq(2, 3, 0, 3), sq(0, 3, 2, 3), sq(0, 1, 0, 3)]).unwrap();
        assert_eq!(ring.region_betti(&[]).unwrap().get(1), 1);
        assert!(ring.is_acyclic_with_slack(0).unwrap().holds);
    }

    #[test]
    fn circle_needs_slack_three() {
        let t = SimplicialComplex::simplex_boundary(3);
        let all: Vec<usize> = (0..t.len()).collect();
        let f = SetFamily::subcomplex(t, vec![all]).unwrap();
        assert!(f.is_acyclic_with_slack(3).unwrap().holds);
        let v = f.is_acyclic_with_slack(2).unwrap();
        assert!(!v.holds);
        assert_eq!(v.violation, Some((vec![0], 1)));
        assert_eq!(f.min_slack().unwrap(), 3);
    }

    #[test]
    fn face_closure_is_validated() {
        let t = SimplicialComplex::simplex(2);
        let edge = t.id_of(&[0, 1]).unwrap();
        let err = SetFamily::subcomplex(t.clone(), vec![vec![edge]]).unwrap_err();
        assert!(matches!(err, FamilyError::NotFaceClosed { member: 0, .. }));
        assert!(SetFamily::subcomplex(t, vec![vec![99]]).is_err());
    }

    #[test]
    fn empty_member_and_intersections() {
        let f = SetFamily::boxes(1, vec![vec![iv(0, 1, 1)], vec![]]).unwrap();
        assert!(f.intersection_is_empty(&[1]).unwrap());
        assert!(f.components(&[0, 1]).unwrap().is_empty());
        assert_eq!(f.intersecting_subsets().unwrap(), vec![vec![0]]);
        assert_eq!(f.region_betti(&[1]).unwrap(), BettiVector::empty_space());
    }

    #[test]
    fn nerve_pruning_matches_brute_force() {
        let f = SetFamily::boxes(1, vec![vec![iv(0, 2, 1)], vec![iv(1, 3, 1)], vec![iv(2, 4, 1)], vec![iv(0, 4, 1)]]).unwrap();
        let mut brute = Vec::new();
        for mask in 1u32..16 {
            let a: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
            if !f.intersection_is_empty(&a).unwrap() {
                brute.push(a);
            }
        }
        brute.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
        assert_eq!(f.intersecting_subsets().unwrap(), brute);
    }
}
