//! Grid triangulations and the encoding of box families as subcomplex families.

use std::collections::BTreeMap;

use super::{FamilyError, Rational, SetFamily};
use crate::poset::SimplicialComplex;

/// Number of grid points along each axis for a grid with `cells[k]` unit cells.
fn points(cells: &[usize]) -> Vec<usize> {
    cells.iter().map(|c| c + 1).collect()
}

/// Vertex label of a grid point, row-major with axis 0 fastest.
pub fn grid_vertex(coords: &[usize], cells: &[usize]) -> u32 {
    let pts = points(cells);
    let mut idx = 0usize;
    for k in (0..coords.len()).rev() {
        idx = idx * pts[k] + coords[k];
    }
    idx as u32
}

pub fn grid_coords(v: u32, cells: &[usize]) -> Vec<usize> {
    let mut v = v as usize;
    points(cells)
        .iter()
        .map(|p| {
            let c = v % p;
            v /= p;
            c
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The Freudenthal (Kuhn) triangulation of the box `∏ [0, cells[k]]`: each unit
/// cube with lower corner `c` is cut into the simplices
/// `c, c + e_π(1), c + e_π(1) + e_π(2), ...` for all axis permutations `π`.
pub fn grid_triangulation(cells: &[usize]) -> SimplicialComplex {
    let d = cells.len();
    if d == 0 {
        return SimplicialComplex::simplex(1);
    }
    let perms = permutations(d);
    let mut facets = Vec::new();
    let total: usize = cells.iter().product();
    for flat in 0..total {
        let mut rest = flat;
        let corner: Vec<usize> = cells
            .iter()
            .map(|&c| {
                let x = rest % c;
                rest /= c;
                x
            })
            .collect();
        for p in &perms {
            let mut at = corner.clone();
            let mut simplex = vec![grid_vertex(&at, cells)];
            for &axis in p {
                at[axis] += 1;
                simplex.push(grid_vertex(&at, cells));
            }
            facets.push(simplex);
        }
    }
    if total == 0 {
        // degenerate grid: a single point per zero axis
        let zero = vec![0usize; d];
        facets.push(vec![grid_vertex(&zero, cells)]);
    }
    SimplicialComplex::from_facets(facets).expect("grid simplices have distinct vertices")
}

/// Re-encodes a box family as a family of subcomplexes of a grid
/// triangulation with the same intersection pattern up to homotopy.
///
/// Endpoints are replaced by their rank along each axis (an order-preserving
/// relabelling keeps every strict overlap), then doubled; an open interval with
/// ranks `(a, b)` becomes the closed grid interval `[2a+1, 2b-1]`. Each box
/// becomes the full subcomplex spanned by its grid points, and a member the
/// union of its boxes. `d_Γ` is set to the box dimension.
pub fn boxes_to_grid(family: &SetFamily) -> Result<SetFamily, FamilyError> {
    let d = family.box_dim().ok_or(FamilyError::WrongBackend)?;
    let mut ranks: Vec<BTreeMap<Rational, usize>> = vec![BTreeMap::new(); d];
    for i in 0..family.len() {
        for b in family.box_member(i).unwrap() {
            for (k, axis) in ranks.iter_mut().enumerate() {
                axis.insert(b.lo()[k], 0);
                axis.insert(b.hi()[k], 0);
            }
        }
    }
    for axis in &mut ranks {
        for (r, v) in axis.values_mut().enumerate() {
            *v = r;
        }
    }
    let cells: Vec<usize> = ranks.iter().map(|a| 2 * a.len().saturating_sub(1)).collect();
    let ambient = grid_triangulation(&cells);
    let coords: Vec<Vec<Vec<usize>>> = ambient
        .simplices()
        .iter()
        .map(|s| s.iter().map(|&v| grid_coords(v, &cells)).collect())
        .collect();
    let mut members = Vec::with_capacity(family.len());
    for i in 0..family.len() {
        let boxes: Vec<Vec<(usize, usize)>> = family
            .box_member(i)
            .unwrap()
            .iter()
            .map(|b| (0..d).map(|k| (2 * ranks[k][&b.lo()[k]] + 1, 2 * ranks[k][&b.hi()[k]] - 1)).collect())
            .collect();
        let ids: Vec<usize> = (0..ambient.len())
            .filter(|&id| {
                boxes.iter().any(|bx| {
                    coords[id].iter().all(|pt| pt.iter().zip(bx).all(|(x, (lo, hi))| lo <= x && x <= hi))
                })
            })
            .collect();
        members.push(ids);
    }
    SetFamily::subcomplex(ambient, members)?.with_gamma_dim(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::OpenBox;
    use crate::homology::reduced_betti;

    #[test]
    fn triangulated_square() {
        let t = grid_triangulation(&[1, 1]);
        assert_eq!(t.simplices().iter().filter(|s| s.len() == 3).count(), 2);
        assert_eq!(t.len(), 4 + 5 + 2);
        let t = grid_triangulation(&[2, 3]);
        assert_eq!(t.simplices().iter().filter(|s| s.len() == 3).count(), 12);
        assert!(reduced_betti(&t).is_zero());
        let cube = grid_triangulation(&[1, 1, 1]);
        assert_eq!(cube.simplices().iter().filter(|s| s.len() == 4).count(), 6);
        assert!(reduced_betti(&cube).is_zero());
    }

    #[test]
    fn coordinates_round_trip() {
        let cells = [3, 4];
        for v in 0..20u32 {
            assert_eq!(grid_vertex(&grid_coords(v, &cells), &cells), v);
        }
    }

    #[test]
    fn ring_of_boxes_encodes_a_circle() {
        let b = |x0, x1, y0, y1| vec![OpenBox::from_ints(&[(x0, x1), (y0, y1)], 1).unwrap()];
        let f = SetFamily::boxes(2, vec![b(0, 3, 0, 1), b(2, 3, 0, 3), b(0, 3, 2, 3), b(0, 1, 0, 3)]).unwrap();
        let g = boxes_to_grid(&f).unwrap();
        assert_eq!(g.gamma_dim(), 2);
        assert_eq!(g.region_betti(&[]).unwrap(), f.region_betti(&[]).unwrap());
        assert_eq!(g.region_betti(&[]).unwrap().get(1), 1);
        for a in [vec![0, 1], vec![0, 2], vec![1, 3], vec![0, 1, 2]] {
            assert_eq!(g.components(&a).unwrap().len(), f.components(&a).unwrap().len(), "{a:?}");
        }
    }
}
