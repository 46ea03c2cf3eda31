//! Nerve `N(F)`, multinerve `M(F)`, reduced multinerve `M_red(F, t)` and the
//! maps between them.
//!
//! A multinerve cell is a pair `(C, A)` with `C` a connected component of
//! `⋂_A`. Cells are ordered by `(|A|, A, canonical component id)`; the face of
//! `(C, A)` dropping member `a` is the component of `⋂_{A∖a}` containing `C`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::families::{ComponentLabel, FamilyError, SetFamily};
use crate::poset::{CellId, RawCell, SimplicialComplex, SimplicialPoset};

/// `(A, C)` for one cell. `component` is `None` on cells that stand for a
/// whole intersection: merged cells of a reduced multinerve, and the least
/// element when the union is disconnected or empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellLabel {
    pub members: Vec<usize>,
    pub component: Option<ComponentLabel>,
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "A={{{}}} C=", a.join(","))?;
        match &self.component {
            Some(c) => write!(f, "{}", c.id),
            None => f.write_str("*"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoset {
    pub poset: SimplicialPoset,
    pub labels: Vec<CellLabel>,
}

impl LabeledPoset {
    pub fn label(&self, c: CellId) -> &CellLabel {
        &self.labels[c.index()]
    }

    /// Cells whose member set is `a`.
    pub fn cells_over(&self, a: &[usize]) -> Vec<CellId> {
        self.poset.cell_ids().filter(|c| self.labels[c.index()].members == a).collect()
    }
}

/// First violation found by [`validate_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    /// The map is not defined on this source cell, or its image is unknown.
    NotTotal { cell: CellId },
    /// `face ≤ cell` but `f(face) ≰ f(cell)`.
    NotMonotone { face: CellId, cell: CellId },
    DimensionChanged { cell: CellId },
    /// `[0, cell]` is not mapped bijectively onto `[0, f(cell)]`.
    SegmentNotBijective { cell: CellId },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::NotTotal { cell } => write!(f, "undefined on cell {cell}"),
            MapViolation::NotMonotone { face, cell } => write!(f, "order not preserved on {face} < {cell}"),
            MapViolation::DimensionChanged { cell } => write!(f, "dimension changed on cell {cell}"),
            MapViolation::SegmentNotBijective { cell } => write!(f, "lower segment of cell {cell} not mapped bijectively"),
        }
    }
}

/// A cell map with its properties checked exhaustively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    pub map: Vec<CellId>,
    pub total: bool,
    pub monotone: bool,
    pub dimension_preserving: bool,
    pub segment_bijective: bool,
    /// Largest preimage of a single target cell.
    pub max_fiber: usize,
    pub violations: Vec<MapViolation>,
}

impl MonotoneMap {
    pub fn apply(&self, c: CellId) -> CellId {
        self.map[c.index()]
    }

    /// Number of preimages of each target cell.
    pub fn fiber_sizes(&self, target_len: usize) -> Vec<usize> {
        let mut sizes = vec![0; target_len];
        for c in &self.map {
            if c.index() < target_len {
                sizes[c.index()] += 1;
            }
        }
        sizes
    }
}

/// Checks totality, order preservation (on covering relations, which suffices
/// by transitivity), dimension preservation, fiber sizes, and that every
/// lower segment `[0, σ]` maps bijectively onto `[0, f(σ)]`.
pub fn validate_map(map: &[CellId], x: &SimplicialPoset, y: &SimplicialPoset) -> MonotoneMap {
    let mut out = MonotoneMap {
        map: map.to_vec(),
        total: true,
        monotone: true,
        dimension_preserving: true,
        segment_bijective: true,
        max_fiber: 0,
        violations: Vec::new(),
    };
    if let Some(c) = x.cell_ids().find(|c| c.index() >= map.len() || !y.contains(map[c.index()])) {
        out.total = false;
        out.monotone = false;
        out.dimension_preserving = false;
        out.segment_bijective = false;
        out.violations.push(MapViolation::NotTotal { cell: c });
        return out;
    }
    let f = |c: CellId| map[c.index()];
    let per_cell: Vec<Vec<MapViolation>> = x
        .cell_ids()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&c| {
            let mut v = Vec::new();
            if x.dim(c) != y.dim(f(c)) {
                v.push(MapViolation::DimensionChanged { cell: c });
            }
            if x.dim(c) >= 0 {
                for &face in x.faces(c) {
                    if !y.is_below(f(face), f(c)) {
                        v.push(MapViolation::NotMonotone { face, cell: c });
                        break;
                    }
                }
            }
            let mut image: Vec<CellId> = x.lower_segment(c).into_iter().map(f).collect();
            let n = image.len();
            image.sort_unstable();
            image.dedup();
            let mut target = y.lower_segment(f(c));
            target.sort_unstable();
            if image.len() != n || image != target {
                v.push(MapViolation::SegmentNotBijective { cell: c });
            }
            v
        })
        .collect();
    for v in per_cell.into_iter().flatten() {
        match v {
            MapViolation::DimensionChanged { .. } => out.dimension_preserving = false,
            MapViolation::NotMonotone { .. } => out.monotone = false,
            MapViolation::SegmentNotBijective { .. } => out.segment_bijective = false,
            MapViolation::NotTotal { .. } => {}
        }
        out.violations.push(v);
    }
    let mut fibers = vec![0usize; y.len()];
    for c in x.cell_ids() {
        fibers[f(c).index()] += 1;
    }
    out.max_fiber = fibers.into_iter().max().unwrap_or(0);
    out
}

/// `N(F)`: subsets of member indices with non-empty intersection, vertices
/// labelled by member index.
pub fn nerve(f: &SetFamily) -> Result<SimplicialComplex, FamilyError> {
    let subsets = f.intersecting_subsets()?;
    let simplices: Vec<Vec<u32>> = subsets.iter().map(|a| a.iter().map(|&m| m as u32).collect()).collect();
    Ok(SimplicialComplex::from_simplices(simplices).expect("intersecting subsets are closed under subsets"))
}

/// `N(F)` as a labelled poset; cell `k + 1` is the `k`-th intersecting subset.
pub fn nerve_poset(f: &SetFamily) -> Result<LabeledPoset, FamilyError> {
    let subsets = f.intersecting_subsets()?;
    let poset = nerve(f)?.to_poset();
    let mut labels = vec![CellLabel {
        members: Vec::new(),
        component: None,
    }];
    labels.extend(subsets.into_iter().map(|a| CellLabel {
        members: a,
        component: None,
    }));
    Ok(LabeledPoset { poset, labels })
}

/// Shared construction of `M(F)` and `M_red(F, t)`: member sets of size at
/// most `merge_upto` get a single cell.
fn build_multinerve(f: &SetFamily, merge_upto: usize) -> Result<LabeledPoset, FamilyError> {
    let subsets = f.intersecting_subsets()?;
    let comps: Vec<Vec<ComponentLabel>> = subsets.par_iter().map(|a| f.components(a)).collect::<Result<_, _>>()?;

    let union = f.components(&[])?;
    let mut labels = vec![CellLabel {
        members: Vec::new(),
        component: if union.len() == 1 { union.into_iter().next() } else { None },
    }];
    let mut records = vec![RawCell::new(0, -1, vec![])];
    // (A, component id or None for merged) -> cell id
    let mut index: HashMap<(Vec<usize>, Option<usize>), u64> = HashMap::new();
    index.insert((Vec::new(), None), 0);

    let mut faces_of = Vec::new();
    for (a, cs) in subsets.iter().zip(&comps) {
        let merged = a.len() <= merge_upto;
        let cells: Vec<Option<&ComponentLabel>> = if merged { vec![None] } else { cs.iter().map(Some).collect() };
        for comp in cells {
            faces_of.clear();
            for skip in 0..a.len() {
                let sub: Vec<usize> = a.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &m)| m).collect();
                let key = if sub.len() <= merge_upto {
                    (sub, None)
                } else {
                    let c = f.component_containing(&sub, &comp.expect("unmerged cell above unmerged faces").rep)?;
                    (sub, Some(c.id))
                };
                faces_of.push(index[&key]);
            }
            let id = records.len() as u64;
            let faces = if a.len() == 1 { vec![0] } else { faces_of.clone() };
            records.push(RawCell::new(id, a.len() as i32 - 1, faces));
            index.insert((a.clone(), comp.map(|c| c.id)), id);
            labels.push(CellLabel {
                members: a.clone(),
                component: match comp {
                    Some(c) => Some(c.clone()),
                    None if cs.len() == 1 => Some(cs[0].clone()),
                    None => None,
                },
            });
        }
    }
    let poset = SimplicialPoset::build(&records).expect("multinerve is a simplicial poset");
    Ok(LabeledPoset { poset, labels })
}

/// `M(F)` with one cell per component of every non-empty intersection and
/// least element `(⋃F, ∅)`.
pub fn multinerve(f: &SetFamily) -> Result<LabeledPoset, FamilyError> {
    build_multinerve(f, 0)
}

/// `M_red(F, t)`: cells `(C, A)` and `(C', A)` with `|A| ≤ t - 1` identified,
/// together with the quotient map `M(F) → M_red(F, t)`.
pub fn reduced_multinerve(f: &SetFamily, t: usize) -> Result<(LabeledPoset, MonotoneMap), FamilyError> {
    let m = multinerve(f)?;
    let red = build_multinerve(f, t.saturating_sub(1))?;
    let map = quotient_map(&m, &red);
    Ok((red, map))
}

/// Sends each cell of `from` to the cell of `to` with the same member set and
/// component, or to the merged cell over the same member set.
fn quotient_map(from: &LabeledPoset, to: &LabeledPoset) -> MonotoneMap {
    let mut by_label: HashMap<(&[usize], Option<usize>), CellId> = HashMap::new();
    let mut merged: HashMap<&[usize], usize> = HashMap::new();
    for c in to.poset.cell_ids() {
        let l = to.label(c);
        by_label.insert((&l.members, l.component.as_ref().map(|x| x.id)), c);
        *merged.entry(&l.members).or_default() += 1;
    }
    let map: Vec<CellId> = from
        .poset
        .cell_ids()
        .map(|c| {
            let l = from.label(c);
            let exact = by_label.get(&(l.members.as_slice(), l.component.as_ref().map(|x| x.id)));
            match exact {
                // a merged cell labelled with the unique component is matched here too
                Some(&t) => t,
                None => {
                    debug_assert_eq!(merged.get(l.members.as_slice()), Some(&1));
                    by_label
                        .iter()
                        .find(|((a, _), _)| *a == l.members.as_slice())
                        .map(|(_, &t)| t)
                        .unwrap_or(CellId(u32::MAX))
                }
            }
        })
        .collect();
    validate_map(&map, &from.poset, &to.poset)
}

/// The projection `π: (C, A) ↦ A` onto the nerve, with the nerve as a
/// labelled poset.
pub fn canonical_projection(m: &LabeledPoset) -> (LabeledPoset, MonotoneMap) {
    let mut sets: Vec<Vec<usize>> = m.labels.iter().skip(1).map(|l| l.members.clone()).collect();
    sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    sets.dedup();
    let complex = SimplicialComplex::from_simplices(sets.iter().map(|a| a.iter().map(|&x| x as u32).collect::<Vec<_>>()))
        .expect("member sets of a multinerve are closed under subsets");
    let poset = complex.to_poset();
    let position: HashMap<&Vec<usize>, CellId> = sets.iter().enumerate().map(|(k, a)| (a, CellId(k as u32 + 1))).collect();
    let map: Vec<CellId> = m
        .labels
        .iter()
        .map(|l| if l.members.is_empty() { CellId::LEAST } else { position[&l.members] })
        .collect();
    let mut labels = vec![CellLabel {
        members: Vec::new(),
        component: None,
    }];
    labels.extend(sets.iter().map(|a| CellLabel {
        members: a.clone(),
        component: None,
    }));
    let checked = validate_map(&map, &m.poset, &poset);
    (LabeledPoset { poset, labels }, checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{OpenBox, Rep};
    use crate::homology::reduced_betti;
    use crate::poset::is_isomorphic;

    fn iv(lo: i64, hi: i64) -> OpenBox {
        OpenBox::from_ints(&[(lo, hi)], 1).unwrap()
    }

    fn c4_family() -> SetFamily {
        let t = SimplicialComplex::from_facets([[0u32, 1], [1, 2], [2, 3], [0, 3]]).unwrap();
        let ids = |ss: &[&[u32]]| ss.iter().map(|s| t.id_of(s).unwrap()).collect::<Vec<_>>();
        let upper = ids(&[&[1], &[2], &[3], &[1, 2], &[2, 3]]);
        let lower = ids(&[&[3], &[0], &[1], &[0, 3], &[0, 1]]);
        SetFamily::subcomplex(t.clone(), vec![upper, lower]).unwrap()
    }

    fn double_edge() -> SimplicialPoset {
        SimplicialPoset::build(&[
            RawCell::new(1, 0, vec![]),
            RawCell::new(2, 0, vec![]),
            RawCell::new(3, 1, vec![1, 2]),
            RawCell::new(4, 1, vec![1, 2]),
        ])
        .unwrap()
    }

    #[test]
    fn c4_multinerve_is_double_edge() {
        let f = c4_family();
        let m = multinerve(&f).unwrap();
        assert!(is_isomorphic(&m.poset, &double_edge()));
        assert_eq!(reduced_betti(&m.poset).get(1), 1);
        assert!(reduced_betti(&nerve(&f).unwrap()).is_zero());
        let (n, pi) = canonical_projection(&m);
        assert_eq!(n.poset.len(), 4);
        assert_eq!(pi.max_fiber, 2);
        assert!(pi.monotone && pi.dimension_preserving && pi.segment_bijective);
        let (red, map) = reduced_multinerve(&f, 2).unwrap();
        assert!(is_isomorphic(&red.poset, &double_edge()));
        assert_eq!(map.max_fiber, 1);
    }

    #[test]
    fn interval_union_multinerve() {
        let f = SetFamily::boxes(1, vec![vec![iv(0, 2), iv(4, 6)], vec![iv(1, 5)]]).unwrap();
        let m = multinerve(&f).unwrap();
        // the first member is itself disconnected: a path through the second member
        let path = SimplicialComplex::from_facets([[0u32, 1], [1, 2]]).unwrap().to_poset();
        assert!(is_isomorphic(&m.poset, &path));
        assert!(reduced_betti(&m.poset).is_zero());
        assert_eq!(m.labels[0].component.as_ref().unwrap().rep, Rep::Box(iv(0, 2)));
    }

    #[test]
    fn single_member() {
        let f = SetFamily::boxes(1, vec![vec![iv(0, 1)]]).unwrap();
        assert_eq!(nerve(&f).unwrap().len(), 1);
        assert_eq!(multinerve(&f).unwrap().poset.len(), 2);
    }

    #[test]
    fn pairwise_meeting_members_without_common_point() {
        let b = |x0, x1, y0, y1| OpenBox::from_ints(&[(x0, x1), (y0, y1)], 1).unwrap();
        let f = SetFamily::boxes(2, vec![vec![b(0, 3, 0, 1)], vec![b(2, 3, 0, 3)], vec![b(0, 3, 2, 3), b(0, 1, 0, 3)]]).unwrap();
        assert_eq!(nerve(&f).unwrap(), SimplicialComplex::simplex_boundary(3));
        // single boxes are pairwise Helly
        let g = SetFamily::boxes(2, vec![vec![b(0, 2, 0, 2)], vec![b(1, 3, 0, 2)], vec![b(0, 3, 1, 3)]]).unwrap();
        assert_eq!(nerve(&g).unwrap(), SimplicialComplex::simplex(3));
    }

    #[test]
    fn reduction_extremes() {
        let f = c4_family();
        let m = multinerve(&f).unwrap();
        let (red1, id) = reduced_multinerve(&f, 1).unwrap();
        assert_eq!(red1, m);
        assert_eq!(id.map, m.poset.cell_ids().collect::<Vec<_>>());
        let (red3, map) = reduced_multinerve(&f, 3).unwrap();
        assert_eq!(red3.poset, nerve(&f).unwrap().to_poset());
        assert_eq!(map.max_fiber, 2);
        assert!(map.monotone && map.dimension_preserving);
    }

    #[test]
    fn validate_map_examples() {
        let p = double_edge();
        let id: Vec<CellId> = p.cell_ids().collect();
        let v = validate_map(&id, &p, &p);
        assert!(v.monotone && v.dimension_preserving && v.segment_bijective);
        assert_eq!(v.max_fiber, 1);

        let edge = SimplicialComplex::simplex(2).to_poset();
        let collapse = vec![CellId(0), CellId(1), CellId(2), CellId(3), CellId(3)];
        let v = validate_map(&collapse, &p, &edge);
        assert!(v.monotone && v.dimension_preserving);
        assert_eq!(v.max_fiber, 2);

        let squash = vec![CellId(0), CellId(1), CellId(1), CellId(1)];
        let v = validate_map(&squash, &edge, &edge);
        assert!(!v.dimension_preserving);
        assert!(v.violations.contains(&MapViolation::DimensionChanged { cell: CellId(3) }));

        let v = validate_map(&[CellId(0)], &edge, &edge);
        assert!(!v.total);
    }
}
