//! Leray number `L(X)` and index `J(X)` of a simplicial poset.
//!
//! `L(X)` is the least `ℓ` such that every induced sub-poset `X[S]` has
//! vanishing reduced homology in all dimensions `>= ℓ`. `J(X)` asks the same of
//! the order complexes of the open upper intervals `(σ, ·]` of every cell `σ`
//! of every `X[S]`. Both are computed by exhaustive enumeration of vertex
//! subsets, refused above a vertex cap unless sampling is requested.
//!
//! The reduced homology of `(σ, ·]` is computed on the chain complex of the
//! upper interval `[σ, ·]`, which is itself a simplicial poset with `σ` as its
//! least element.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicI32, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::homology::{self, upper_chain_complex};
use crate::poset::{upper_complexes, CellId, SimplicialComplex, SimplicialPoset};

pub const DEFAULT_CAP: usize = 16;
/// Exhaustive enumeration stores vertex sets in a `u64`.
pub const MAX_EXACT_VERTICES: usize = 63;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LerayConfig {
    /// Largest vertex count accepted for exhaustive enumeration.
    pub cap: usize,
    /// When set, draw this many random vertex subsets instead of enumerating.
    pub sample: Option<usize>,
    pub seed: u64,
}

impl Default for LerayConfig {
    fn default() -> Self {
        LerayConfig {
            cap: DEFAULT_CAP,
            sample: None,
            seed: 0,
        }
    }
}

impl LerayConfig {
    pub fn with_cap(cap: usize) -> Self {
        LerayConfig {
            cap,
            ..Default::default()
        }
    }

    pub fn sampled(samples: usize, seed: u64) -> Self {
        LerayConfig {
            cap: DEFAULT_CAP,
            sample: Some(samples),
            seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    /// The value is a lower bound only.
    Sampled,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    Leray,
    J,
}

/// `(S, j, σ)`: the induced sub-poset on `S`, the dimension `j` of a non-zero
/// reduced Betti number, and for `J` the cell whose upper interval carries it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vertices: Vec<CellId>,
    pub dim: i32,
    pub cell: Option<CellId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LerayReport {
    pub index: Index,
    pub value: usize,
    pub mode: Mode,
    /// Absent when `value == 0`.
    pub witness: Option<Witness>,
    pub samples: usize,
}

impl LerayReport {
    /// `leray.v1` text.
    pub fn to_leray_v1(&self) -> String {
        let mut s = String::from("leray v1\n");
        s.push_str(&format!(
            "index = {}\n",
            match self.index {
                Index::Leray => "L",
                Index::J => "J",
            }
        ));
        s.push_str(&format!("value = {}\n", self.value));
        s.push_str(&format!("mode = {}\n", self.mode));
        if self.mode == Mode::Sampled {
            s.push_str(&format!("samples = {}\n", self.samples));
            s.push_str("bound = lower\n");
        }
        match &self.witness {
            None => s.push_str("witness = none\n"),
            Some(w) => {
                let verts: Vec<String> = w.vertices.iter().map(|v| v.to_string()).collect();
                let cell = w.cell.map_or("-".to_string(), |c| c.to_string());
                s.push_str(&format!("witness = S={{{}}} j={} sigma={}\n", verts.join(","), w.dim, cell));
            }
        }
        s
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LerayError {
    #[error("{vertices} vertices exceed the exhaustive enumeration cap of {cap} (use a larger --cap, or --sample N for a lower bound)")]
    CapExceeded { vertices: usize, cap: usize },
}

/// Precomputed per-poset data shared by `L` and `J`.
struct Prepared<'a> {
    poset: &'a SimplicialPoset,
    masks: Vec<u64>,
}

impl<'a> Prepared<'a> {
    fn new(poset: &'a SimplicialPoset) -> Self {
        let mut position = vec![usize::MAX; poset.len()];
        for (i, v) in poset.vertex_list().iter().enumerate() {
            position[v.index()] = i;
        }
        let masks = poset
            .cell_ids()
            .map(|c| {
                poset.vertices(c).iter().fold(0u64, |m, v| {
                    let p = position[v.index()];
                    if p < 64 {
                        m | 1 << p
                    } else {
                        m
                    }
                })
            })
            .collect();
        Prepared { poset, masks }
    }

    fn vertices_of_mask(&self, mask: u64) -> Vec<CellId> {
        let vl = self.poset.vertex_list();
        (0..vl.len()).filter(|&i| mask >> i & 1 == 1).map(|i| vl[i]).collect()
    }
}

fn check_cap(p: &SimplicialPoset, cfg: &LerayConfig) -> Result<(), LerayError> {
    let n = p.num_vertices();
    let cap = cfg.cap.min(MAX_EXACT_VERTICES);
    if n > cap {
        return Err(LerayError::CapExceeded { vertices: n, cap });
    }
    Ok(())
}

/// Top non-zero reduced Betti dimension of `(σ, ·]` within `cells`.
fn top_of(p: &SimplicialPoset, sigma: CellId, cells: &[CellId], scratch: &mut Vec<u32>) -> i32 {
    upper_chain_complex(p, sigma, cells, scratch).reduced_betti().top().unwrap_or(-2)
}

struct Candidate {
    size: usize,
    vertices: Vec<CellId>,
    top: i32,
    cell: Option<CellId>,
}

fn finish(index: Index, mode: Mode, samples: usize, mut found: Vec<Candidate>) -> LerayReport {
    let best = found.iter().map(|c| c.top + 1).max().unwrap_or(0).max(0);
    if best == 0 {
        return LerayReport {
            index,
            value: 0,
            mode,
            witness: None,
            samples,
        };
    }
    found.retain(|c| c.top + 1 == best);
    found.sort_by(|a, b| (a.size, &a.vertices, a.cell).cmp(&(b.size, &b.vertices, b.cell)));
    let w = found.swap_remove(0);
    LerayReport {
        index,
        value: best as usize,
        mode,
        witness: Some(Witness {
            vertices: w.vertices,
            dim: best - 1,
            cell: w.cell,
        }),
        samples,
    }
}

/// The Leray number `L(X)`.
pub fn leray_number(p: &SimplicialPoset, cfg: &LerayConfig) -> Result<LerayReport, LerayError> {
    if let Some(samples) = cfg.sample {
        return Ok(sampled(p, Index::Leray, samples, cfg.seed));
    }
    check_cap(p, cfg)?;
    let prep = Prepared::new(p);
    let n = p.num_vertices();
    // max dimension of X[S] is bounded by |S| - 1
    let best = AtomicI32::new(0);
    let found: Vec<Candidate> = (0u64..1u64 << n)
        .into_par_iter()
        .map_init(Vec::new, |scratch, mask| {
            let size = mask.count_ones() as i32;
            if size < best.load(Ordering::Relaxed) {
                return None;
            }
            let cells: Vec<CellId> = p.cell_ids().filter(|c| prep.masks[c.index()] & !mask == 0).collect();
            let top = top_of(p, CellId::LEAST, &cells, scratch);
            best.fetch_max(top + 1, Ordering::Relaxed);
            Some(Candidate {
                size: size as usize,
                vertices: prep.vertices_of_mask(mask),
                top,
                cell: None,
            })
        })
        .flatten()
        .collect();
    Ok(finish(Index::Leray, Mode::Exact, 0, found))
}

/// The index `J(X)`.
pub fn j_index(p: &SimplicialPoset, cfg: &LerayConfig) -> Result<LerayReport, LerayError> {
    if let Some(samples) = cfg.sample {
        return Ok(sampled(p, Index::J, samples, cfg.seed));
    }
    check_cap(p, cfg)?;
    let prep = Prepared::new(p);
    let above = p.upper_sets();
    let best = AtomicI32::new(0);
    let found: Vec<Candidate> = p
        .cell_ids()
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|sigma| {
            let base = prep.masks[sigma.index()];
            let upper = &above[sigma.index()];
            let free = upper.iter().fold(0u64, |m, c| m | prep.masks[c.index()]) & !base;
            let free_bits: Vec<u32> = (0..64).filter(|i| free >> i & 1 == 1).collect();
            let sigma_dim = p.dim(sigma);
            let mut memo: HashMap<Vec<CellId>, i32> = HashMap::new();
            let mut scratch = Vec::new();
            let mut out = Vec::new();
            for t in 0u64..1u64 << free_bits.len() {
                let mut mask = base;
                for (k, b) in free_bits.iter().enumerate() {
                    if t >> k & 1 == 1 {
                        mask |= 1 << b;
                    }
                }
                let cells: Vec<CellId> = upper.iter().copied().filter(|c| prep.masks[c.index()] & !mask == 0).collect();
                // (σ, ·] in X[S] has dimension at most dim X[S] - dim σ - 1
                let room = cells.iter().map(|&c| p.dim(c)).max().unwrap_or(sigma_dim) - sigma_dim;
                if room < best.load(Ordering::Relaxed) {
                    continue;
                }
                let top = match memo.get(&cells) {
                    Some(&t) => t,
                    None => {
                        let t = top_of(p, sigma, &cells, &mut scratch);
                        memo.insert(cells, t);
                        t
                    }
                };
                best.fetch_max(top + 1, Ordering::Relaxed);
                out.push(Candidate {
                    size: mask.count_ones() as usize,
                    vertices: prep.vertices_of_mask(mask),
                    top,
                    cell: Some(sigma),
                });
            }
            out
        })
        .collect();
    Ok(finish(Index::J, Mode::Exact, 0, found))
}

/// Random vertex subsets (each vertex kept with probability 1/2) and, for `J`,
/// a uniformly random cell of the induced sub-poset.
fn sampled(p: &SimplicialPoset, index: Index, samples: usize, seed: u64) -> LerayReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verts = p.vertex_list().to_vec();
    let mut keep = vec![false; p.len()];
    let mut scratch = Vec::new();
    let mut found = Vec::new();
    for _ in 0..samples {
        keep.iter_mut().for_each(|k| *k = false);
        let chosen: Vec<CellId> = verts.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
        for v in &chosen {
            keep[v.index()] = true;
        }
        let cells: Vec<CellId> = p.cell_ids().filter(|&c| p.vertices(c).iter().all(|v| keep[v.index()])).collect();
        let sigma = match index {
            Index::Leray => CellId::LEAST,
            Index::J => cells[rng.random_range(0..cells.len())],
        };
        let upper: Vec<CellId> = cells.iter().copied().filter(|&c| p.is_below(sigma, c)).collect();
        let top = top_of(p, sigma, &upper, &mut scratch);
        found.push(Candidate {
            size: chosen.len(),
            vertices: chosen,
            top,
            cell: (index == Index::J).then_some(sigma),
        });
    }
    finish(index, Mode::Sampled, samples, found)
}

/// Convenience wrappers for complexes.
pub fn leray_number_of_complex(k: &SimplicialComplex, cfg: &LerayConfig) -> Result<LerayReport, LerayError> {
    leray_number(&k.to_poset(), cfg)
}

pub fn j_index_of_complex(k: &SimplicialComplex, cfg: &LerayConfig) -> Result<LerayReport, LerayError> {
    j_index(&k.to_poset(), cfg)
}

/// Recomputes the witness along an independent route: the induced sub-poset
/// is rebuilt, and for `J` the upper interval is taken as an order complex.
/// True when the witness carries a non-zero `β̃_{value-1}` (or when there is
/// no witness and the value is 0).
pub fn witness_reproduces(p: &SimplicialPoset, report: &LerayReport) -> bool {
    let Some(w) = &report.witness else {
        return report.value == 0;
    };
    if w.dim != report.value as i32 - 1 {
        return false;
    }
    let Ok(sub) = p.induced_subposet(&w.vertices) else {
        return false;
    };
    match (report.index, w.cell) {
        (Index::Leray, None) => homology::reduced_betti(&sub).get(w.dim) > 0,
        (Index::J, Some(cell)) => {
            // locate `cell` inside the rebuilt sub-poset by its position among kept cells
            let keep: Vec<bool> = {
                let mut k = vec![false; p.len()];
                for v in &w.vertices {
                    k[v.index()] = true;
                }
                k
            };
            let kept: Vec<CellId> = p.cell_ids().filter(|&c| p.vertices(c).iter().all(|v| keep[v.index()])).collect();
            let Some(pos) = kept.iter().position(|&c| c == cell) else {
                return false;
            };
            let Ok((_, open)) = upper_complexes(&sub, CellId(pos as u32)) else {
                return false;
            };
            homology::reduced_betti(&open).get(w.dim) > 0
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::RawCell;

    fn double_edge() -> SimplicialPoset {
        SimplicialPoset::build(&[
            RawCell::new(1, 0, vec![]),
            RawCell::new(2, 0, vec![]),
            RawCell::new(3, 1, vec![1, 2]),
            RawCell::new(4, 1, vec![1, 2]),
        ])
        .unwrap()
    }

    fn exact() -> LerayConfig {
        LerayConfig::default()
    }

    #[test]
    fn full_simplices_have_zero_indices() {
        for n in 0..6 {
            let p = SimplicialComplex::simplex(n).to_poset();
            let l = leray_number(&p, &exact()).unwrap();
            let j = j_index(&p, &exact()).unwrap();
            assert_eq!((l.value, j.value), (0, 0), "simplex on {n} vertices");
            assert!(l.witness.is_none());
        }
    }

    #[test]
    fn triangle_boundary() {
        let p = SimplicialComplex::simplex_boundary(3).to_poset();
        let l = leray_number(&p, &exact()).unwrap();
        assert_eq!(l.value, 2);
        let w = l.witness.as_ref().unwrap();
        assert_eq!(w.vertices.len(), 3);
        assert_eq!(w.dim, 1);
        assert!(witness_reproduces(&p, &l));
        let j = j_index(&p, &exact()).unwrap();
        assert_eq!(j.value, 2);
        assert!(witness_reproduces(&p, &j));
    }

    #[test]
    fn two_points() {
        let p = SimplicialComplex::from_facets([[0u32], [1]]).unwrap().to_poset();
        let l = leray_number(&p, &exact()).unwrap();
        assert_eq!(l.value, 1);
        assert_eq!(l.witness.unwrap().vertices.len(), 2);
    }

    #[test]
    fn double_edge_j_is_two() {
        let p = double_edge();
        let j = j_index(&p, &exact()).unwrap();
        assert_eq!(j.value, 2);
        let w = j.witness.clone().unwrap();
        assert_eq!(w.cell, Some(CellId::LEAST));
        assert!(witness_reproduces(&p, &j));
        assert_eq!(leray_number(&p, &exact()).unwrap().value, 2);
    }

    #[test]
    fn cap_is_enforced() {
        let p = SimplicialComplex::from_facets((0..12u32).map(|v| vec![v])).unwrap().to_poset();
        let err = leray_number(&p, &LerayConfig::with_cap(10)).unwrap_err();
        assert_eq!(err, LerayError::CapExceeded { vertices: 12, cap: 10 });
        assert!(err.to_string().contains("cap of 10"));
    }

    #[test]
    fn sampling_is_a_reproducible_lower_bound() {
        let p = SimplicialComplex::simplex_boundary(4).to_poset();
        let a = leray_number(&p, &LerayConfig::sampled(64, 3)).unwrap();
        let b = leray_number(&p, &LerayConfig::sampled(64, 3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mode, Mode::Sampled);
        assert!(a.value <= 3);
        assert!(a.to_leray_v1().contains("bound = lower"));
        let j = j_index(&p, &LerayConfig::sampled(64, 3)).unwrap();
        assert!(j.value <= 3);
    }

    #[test]
    fn empty_poset() {
        let p = SimplicialPoset::empty();
        assert_eq!(leray_number(&p, &exact()).unwrap().value, 0);
        assert_eq!(j_index(&p, &exact()).unwrap().value, 0);
    }

    #[test]
    fn report_format() {
        let p = SimplicialComplex::simplex_boundary(3).to_poset();
        let text = leray_number(&p, &exact()).unwrap().to_leray_v1();
        assert_eq!(text, "leray v1\nindex = L\nvalue = 2\nmode = exact\nwitness = S={1,2,3} j=1 sigma=-\n");
    }
}
