//! Reduced simplicial homology over Q.
//!
//! Chain complexes are augmented: the least element spans dimension `-1` and
//! every vertex maps to it with coefficient `+1`. The boundary of an `n`-cell
//! is `sum_i (-1)^i face_i`.

pub mod rank;

use std::fmt;

use crate::poset::{CellId, SimplicialComplex, SimplicialPoset};
use rank::SparseRow;

/// Reduced Betti numbers indexed from dimension `-1`. Trailing zeros are
/// trimmed, so equality compares mathematical values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiVector {
    values: Vec<usize>,
}

impl BettiVector {
    /// Builds from values for dimensions `-1, 0, 1, ...`.
    pub fn from_values(mut values: Vec<usize>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        BettiVector { values }
    }

    /// The Betti vector of the empty space.
    pub fn empty_space() -> Self {
        Self::from_values(vec![1])
    }

    pub fn get(&self, dim: i32) -> usize {
        if dim < -1 {
            return 0;
        }
        self.values.get((dim + 1) as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest dimension with a non-zero value.
    pub fn top(&self) -> Option<i32> {
        if self.values.is_empty() {
            None
        } else {
            Some(self.values.len() as i32 - 2)
        }
    }

    /// `(dim, value)` for every non-zero entry.
    pub fn nonzero(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.values.iter().enumerate().filter(|(_, v)| **v != 0).map(|(i, v)| (i as i32 - 1, *v))
    }

    /// True when every entry in dimension `>= from` is zero.
    pub fn vanishes_from(&self, from: i32) -> bool {
        self.top().is_none_or(|t| t < from)
    }

    /// Unreduced Betti numbers for dimensions `0, 1, ...`.
    pub fn unreduced(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.values.iter().skip(1).copied().collect();
        if self.get(-1) == 0 {
            if out.is_empty() {
                out.push(0);
            }
            out[0] += 1;
        }
        out
    }

    /// `betti.v1` body: one `<dim> <value>` line per non-zero entry.
    pub fn to_betti_v1(&self) -> String {
        self.nonzero().map(|(d, v)| format!("{d} {v}\n")).collect()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (d, v)) in self.nonzero().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {v}")?;
        }
        write!(f, "}}")
    }
}

/// Augmented chain complex with exact integer boundary matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    /// `sizes[n + 1]` is the number of `n`-cells.
    sizes: Vec<usize>,
    /// `boundaries[n]` is `∂_n : C_n -> C_{n-1}` as one sparse row per `n`-cell.
    boundaries: Vec<Vec<SparseRow>>,
}

impl ChainComplex {
    fn from_parts(sizes: Vec<usize>, boundaries: Vec<Vec<SparseRow>>) -> Self {
        debug_assert_eq!(sizes.len(), boundaries.len() + 1);
        ChainComplex { sizes, boundaries }
    }

    /// Number of `n`-cells (`n >= -1`).
    pub fn size(&self, n: i32) -> usize {
        if n < -1 {
            return 0;
        }
        self.sizes.get((n + 1) as usize).copied().unwrap_or(0)
    }

    pub fn top_dim(&self) -> i32 {
        self.sizes.len() as i32 - 2
    }

    /// Rows of `∂_n`, one per `n`-cell, columns indexing `(n-1)`-cells.
    pub fn boundary(&self, n: i32) -> &[SparseRow] {
        if n < 0 {
            return &[];
        }
        self.boundaries.get(n as usize).map_or(&[], |b| b.as_slice())
    }

    /// Dense copy of `∂_n`.
    pub fn boundary_dense(&self, n: i32) -> Vec<Vec<i64>> {
        let cols = self.size(n - 1);
        self.boundary(n)
            .iter()
            .map(|row| {
                let mut r = vec![0i64; cols];
                for &(c, v) in row {
                    r[c] = v;
                }
                r
            })
            .collect()
    }

    /// Checks `∂_{n} ∘ ∂_{n+1} = 0`; returns the first `(n + 1, cell index)`
    /// whose boundary does not cancel.
    pub fn check_boundary_squared(&self) -> Result<(), (i32, usize)> {
        for n in 0..self.top_dim() {
            let lower = self.boundary(n);
            for (i, row) in self.boundary(n + 1).iter().enumerate() {
                let mut acc = vec![0i64; self.size(n - 1)];
                for &(c, v) in row {
                    for &(cc, vv) in &lower[c] {
                        acc[cc] += v * vv;
                    }
                }
                if acc.iter().any(|&x| x != 0) {
                    return Err((n + 1, i));
                }
            }
        }
        Ok(())
    }

    pub fn reduced_betti(&self) -> BettiVector {
        let top = self.top_dim();
        let ranks: Vec<usize> = (0..=top.max(-1) + 1).map(|n| rank::rank(self.boundary(n))).collect();
        let rank_of = |n: i32| if n < 0 { 0 } else { ranks.get(n as usize).copied().unwrap_or(0) };
        let values = (-1..=top).map(|n| self.size(n) - rank_of(n) - rank_of(n + 1)).collect();
        BettiVector::from_values(values)
    }

    /// `sum_{n >= 0} (-1)^n c_n`.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.top_dim())
            .map(|n| if n % 2 == 0 { self.size(n) as i64 } else { -(self.size(n) as i64) })
            .sum()
    }
}

/// Anything with an augmented simplicial chain complex.
pub trait Chains {
    fn chain_complex(&self) -> ChainComplex;
}

impl Chains for SimplicialPoset {
    fn chain_complex(&self) -> ChainComplex {
        chain_complex(self)
    }
}

impl Chains for SimplicialComplex {
    fn chain_complex(&self) -> ChainComplex {
        let top = self.dim();
        let mut sizes = vec![0usize; (top + 2) as usize];
        sizes[0] = 1;
        let mut position = vec![0usize; self.len()];
        for (i, s) in self.simplices().iter().enumerate() {
            let k = s.len();
            position[i] = sizes[k];
            sizes[k] += 1;
        }
        let mut boundaries: Vec<Vec<SparseRow>> = vec![Vec::new(); (top + 1).max(0) as usize];
        for s in self.simplices() {
            let n = s.len() - 1;
            let row = if n == 0 {
                vec![(0, 1)]
            } else {
                let mut row: SparseRow = (0..s.len())
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        let id = self.id_of(&f).expect("complex is face-closed");
                        (position[id], if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                row.sort_unstable();
                row
            };
            boundaries[n].push(row);
        }
        ChainComplex::from_parts(sizes, boundaries)
    }
}

/// The augmented chain complex of a simplicial poset.
pub fn chain_complex(p: &SimplicialPoset) -> ChainComplex {
    let cells: Vec<CellId> = p.cell_ids().collect();
    let mut scratch = Vec::new();
    upper_chain_complex(p, CellId::LEAST, &cells, &mut scratch)
}

/// Chain complex of the upper interval `[σ, ·]` restricted to `cells`, graded
/// by `dim - dim σ - 1` so that `σ` spans dimension `-1`.
///
/// `cells` must contain `σ`, lie above it, and be closed under taking faces
/// that stay above `σ`. The reduced homology equals that of the order complex
/// of `(σ, ·] ∩ cells`. With `σ` the least element this is the ordinary
/// chain complex of the sub-poset `cells`.
pub(crate) fn upper_chain_complex(
    p: &SimplicialPoset,
    sigma: CellId,
    cells: &[CellId],
    scratch: &mut Vec<u32>,
) -> ChainComplex {
    let base = p.dim(sigma);
    let top = cells.iter().map(|&c| p.dim(c) - base - 1).max().unwrap_or(-1);
    if scratch.len() < p.len() {
        scratch.resize(p.len(), 0);
    }
    let mut sizes = vec![0usize; (top + 2) as usize];
    for &c in cells {
        let g = (p.dim(c) - base) as usize;
        scratch[c.index()] = sizes[g] as u32;
        sizes[g] += 1;
    }
    let sigma_verts = p.vertices(sigma);
    let mut boundaries: Vec<Vec<SparseRow>> = vec![Vec::new(); (top + 1).max(0) as usize];
    for &c in cells {
        let g = p.dim(c) - base - 1;
        if g < 0 {
            continue;
        }
        let verts = p.vertices(c);
        let faces = p.faces(c);
        let mut row: SparseRow = Vec::with_capacity(verts.len());
        let mut k = 0usize;
        for (i, v) in verts.iter().enumerate() {
            if sigma_verts.binary_search(v).is_ok() {
                continue;
            }
            let f = faces[i];
            row.push((scratch[f.index()] as usize, if k.is_multiple_of(2) { 1 } else { -1 }));
            k += 1;
        }
        row.sort_unstable();
        boundaries[g as usize].push(row);
    }
    // Rows must follow basis order within each grade; cells are visited in
    // the order used to assign positions, so they already do.
    ChainComplex::from_parts(sizes, boundaries)
}

/// Reduced Betti numbers of a poset or complex.
pub fn reduced_betti<T: Chains + ?Sized>(x: &T) -> BettiVector {
    x.chain_complex().reduced_betti()
}

/// Euler characteristic `sum_{n >= 0} (-1)^n c_n`.
pub fn euler_characteristic<T: Chains + ?Sized>(x: &T) -> i64 {
    x.chain_complex().euler_characteristic()
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

    #[test]
    fn chain_complex_of_point() {
        let c = SimplicialComplex::simplex(1).to_poset().chain_complex();
        assert_eq!(c.size(0), 1);
        assert_eq!(c.size(-1), 1);
        assert_eq!(c.boundary_dense(0), vec![vec![1]]);
    }

    #[test]
    fn chain_complex_of_double_edge() {
        let c = double_edge().chain_complex();
        assert_eq!(c.size(1), 2);
        assert_eq!(c.size(0), 2);
        // d = d_0 - d_1: face_0 is b (index 1), face_1 is a (index 0)
        assert_eq!(c.boundary_dense(1), vec![vec![-1, 1], vec![-1, 1]]);
        assert!(c.check_boundary_squared().is_ok());
    }

    #[test]
    fn chain_complex_of_empty_poset() {
        let c = SimplicialPoset::empty().chain_complex();
        assert_eq!(c.size(-1), 1);
        assert_eq!(c.size(0), 0);
        assert_eq!(c.top_dim(), -1);
    }

    #[test]
    fn betti_examples() {
        let circle = SimplicialComplex::simplex_boundary(3);
        assert_eq!(reduced_betti(&circle), BettiVector::from_values(vec![0, 0, 1]));
        for n in 1..6 {
            assert!(reduced_betti(&SimplicialComplex::simplex(n)).is_zero());
        }
        assert_eq!(reduced_betti(&SimplicialPoset::empty()), BettiVector::empty_space());
        assert_eq!(reduced_betti(&double_edge()), BettiVector::from_values(vec![0, 0, 1]));
        let sphere = SimplicialComplex::simplex_boundary(4);
        assert_eq!(reduced_betti(&sphere).get(2), 1);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(&SimplicialComplex::simplex_boundary(3)), 0);
        assert_eq!(euler_characteristic(&SimplicialComplex::simplex(3)), 1);
        assert_eq!(euler_characteristic(&double_edge()), 0);
    }

    #[test]
    fn unreduced_and_format() {
        let two_points = SimplicialComplex::from_facets([[0u32], [1]]).unwrap();
        let b = reduced_betti(&two_points);
        assert_eq!(b.get(0), 1);
        assert_eq!(b.unreduced(), vec![2]);
        assert_eq!(BettiVector::empty_space().unreduced(), Vec::<usize>::new());
        assert_eq!(b.to_betti_v1(), "0 1\n");
        assert_eq!(BettiVector::empty_space().to_betti_v1(), "-1 1\n");
    }

    #[test]
    fn upper_interval_of_vertex_in_double_edge() {
        let p = double_edge();
        let above: Vec<CellId> = vec![CellId(1), CellId(3), CellId(4)];
        let mut scratch = Vec::new();
        let b = upper_chain_complex(&p, CellId(1), &above, &mut scratch).reduced_betti();
        assert_eq!(b, BettiVector::from_values(vec![0, 1]));
    }
}
