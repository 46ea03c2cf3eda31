use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::{CellId, RawCell, SimplicialPoset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("simplex {simplex:?} repeats a vertex")]
    RepeatedVertex { simplex: Vec<u32> },
    #[error("simplex {simplex:?} is missing its face {face:?}")]
    NotClosed { simplex: Vec<u32>, face: Vec<u32> },
}

/// An abstract simplicial complex on `u32` vertex labels.
///
/// The empty simplex is always present and is not stored. Simplices are kept
/// sorted by `(dimension, lexicographic)`, and that position is the simplex id.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl SimplicialComplex {
    /// The complex `{∅}`.
    pub fn empty() -> Self {
        Self::default()
    }

    fn from_sorted_set(set: BTreeSet<(usize, Vec<u32>)>) -> Self {
        let simplices: Vec<Vec<u32>> = set.into_iter().map(|(_, s)| s).collect();
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        SimplicialComplex { simplices, index }
    }

    /// Downward closure of the given simplices. Vertex lists need not be sorted.
    pub fn from_facets<I, S>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut set = BTreeSet::new();
        for f in facets {
            let s = normalize(f.as_ref())?;
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                set.insert((sub.len(), sub));
            }
        }
        Ok(Self::from_sorted_set(set))
    }

    /// Exactly the given (non-empty) simplices, which must be closed under
    /// taking faces.
    pub fn from_simplices<I, S>(simplices: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut set = BTreeSet::new();
        for s in simplices {
            let s = normalize(s.as_ref())?;
            if !s.is_empty() {
                set.insert((s.len(), s));
            }
        }
        let out = Self::from_sorted_set(set);
        for s in &out.simplices {
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                if !out.index.contains_key(&face) {
                    return Err(ComplexError::NotClosed {
                        simplex: s.clone(),
                        face,
                    });
                }
            }
        }
        Ok(out)
    }

    /// The full simplex on `n` vertices `0..n`.
    pub fn simplex(n: u32) -> Self {
        Self::from_facets([(0..n).collect::<Vec<_>>()]).unwrap()
    }

    /// The boundary of the simplex on `n` vertices `0..n`.
    pub fn simplex_boundary(n: u32) -> Self {
        let facets: Vec<Vec<u32>> = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
        Self::from_facets(facets).unwrap()
    }

    /// Non-empty simplices in id order.
    pub fn simplices(&self) -> &[Vec<u32>] {
        &self.simplices
    }

    /// Number of non-empty simplices.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    /// True for the complex `{∅}`.
    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn id_of(&self, simplex: &[u32]) -> Option<usize> {
        self.index.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        simplex.is_empty() || self.index.contains_key(simplex)
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.simplices.iter().take_while(|s| s.len() == 1).map(|s| s[0]).collect()
    }

    pub fn dim(&self) -> i32 {
        self.simplices.last().map_or(-1, |s| s.len() as i32 - 1)
    }

    /// Simplices all of whose vertices lie in `vertices`.
    pub fn induced(&self, vertices: &[u32]) -> SimplicialComplex {
        let keep: BTreeSet<u32> = vertices.iter().copied().collect();
        let set = self
            .simplices
            .iter()
            .filter(|s| s.iter().all(|v| keep.contains(v)))
            .map(|s| (s.len(), s.clone()))
            .collect();
        Self::from_sorted_set(set)
    }

    /// Relabels vertices through `f`, which must be injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> SimplicialComplex {
        Self::from_simplices(self.simplices.iter().map(|s| s.iter().map(|&v| f(v)).collect::<Vec<_>>()))
            .expect("injective relabelling preserves closure")
    }

    /// The complex as a simplicial poset. Cell `i + 1` is simplex `i`; vertices
    /// are ordered by label.
    pub fn to_poset(&self) -> SimplicialPoset {
        let mut records = Vec::with_capacity(self.simplices.len());
        for (i, s) in self.simplices.iter().enumerate() {
            let id = i as u64 + 1;
            if s.len() == 1 {
                records.push(RawCell::new(id, 0, vec![]));
            } else {
                let faces = (0..s.len())
                    .map(|k| {
                        let mut f = s.clone();
                        f.remove(k);
                        self.index[&f] as u64 + 1
                    })
                    .collect();
                records.push(RawCell::new(id, s.len() as i32 - 1, faces));
            }
        }
        SimplicialPoset::build(&records).expect("a simplicial complex is a simplicial poset")
    }

    /// Reads a poset whose cells are determined by their vertex sets back as a
    /// complex, labelling vertex cells by their ids. Returns `None` if two
    /// cells share a vertex set.
    pub fn from_poset(p: &SimplicialPoset) -> Option<SimplicialComplex> {
        if !p.is_complex() {
            return None;
        }
        let simplices = p
            .cell_ids()
            .skip(1)
            .map(|c| p.vertices(c).iter().map(|v: &CellId| v.0).collect::<Vec<u32>>());
        Some(Self::from_simplices(simplices).expect("cells of a poset are face-closed"))
    }
}

fn normalize(s: &[u32]) -> Result<Vec<u32>, ComplexError> {
    let mut v = s.to_vec();
    v.sort_unstable();
    let before = v.len();
    v.dedup();
    if v.len() != before {
        return Err(ComplexError::RepeatedVertex { simplex: s.to_vec() });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facets_are_closed_downward() {
        let k = SimplicialComplex::from_facets([[0u32, 1, 2]]).unwrap();
        assert_eq!(k.len(), 7);
        assert_eq!(k.dim(), 2);
        assert_eq!(k.vertices(), vec![0, 1, 2]);
        assert_eq!(k.id_of(&[0, 1, 2]), Some(6));
    }

    #[test]
    fn unclosed_input_is_rejected() {
        let err = SimplicialComplex::from_simplices([vec![0u32], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, ComplexError::NotClosed { .. }));
        assert!(SimplicialComplex::from_facets([[3u32, 3]]).is_err());
    }

    #[test]
    fn poset_round_trip() {
        let k = SimplicialComplex::simplex_boundary(4);
        let p = k.to_poset();
        assert!(p.is_complex());
        let back = SimplicialComplex::from_poset(&p).unwrap();
        assert_eq!(back.len(), k.len());
        assert_eq!(back.dim(), 2);
    }

    #[test]
    fn induced_subcomplex() {
        let k = SimplicialComplex::simplex_boundary(3);
        assert_eq!(k.induced(&[0, 1]).len(), 3);
        assert!(k.induced(&[]).is_empty());
    }
}
