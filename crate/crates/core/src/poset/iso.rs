use std::collections::HashMap;

use super::{CellId, SimplicialPoset};

/// Decides whether two simplicial posets are isomorphic.
///
/// Cells are first coloured by iterated refinement of
/// `(dim, sorted face colours, sorted coface colours)`, computed jointly on both
/// posets, then a backtracking search matches cells by increasing dimension.
/// Intended for test-sized inputs.
pub fn is_isomorphic(a: &SimplicialPoset, b: &SimplicialPoset) -> bool {
    if a.f_vector() != b.f_vector() {
        return false;
    }
    let (ca, cb) = refine(a, b);
    let mut hist_a: Vec<usize> = ca.clone();
    let mut hist_b: Vec<usize> = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return false;
    }
    let order: Vec<CellId> = {
        let mut v: Vec<CellId> = a.cell_ids().collect();
        v.sort_by_key(|&c| (a.dim(c), c));
        v
    };
    let mut map: Vec<Option<CellId>> = vec![None; a.len()];
    let mut used = vec![false; b.len()];
    search(a, b, &ca, &cb, &order, 0, &mut map, &mut used)
}

fn cofaces(p: &SimplicialPoset) -> Vec<Vec<CellId>> {
    let mut co = vec![Vec::new(); p.len()];
    for c in p.cell_ids() {
        if p.dim(c) >= 0 {
            for &f in p.faces(c) {
                co[f.index()].push(c);
            }
        }
    }
    co
}

fn faces_of(p: &SimplicialPoset, c: CellId) -> &[CellId] {
    if p.dim(c) < 0 {
        &[]
    } else {
        p.faces(c)
    }
}

fn refine(a: &SimplicialPoset, b: &SimplicialPoset) -> (Vec<usize>, Vec<usize>) {
    let co_a = cofaces(a);
    let co_b = cofaces(b);
    let mut ca: Vec<usize> = a.cell_ids().map(|c| (a.dim(c) + 1) as usize).collect();
    let mut cb: Vec<usize> = b.cell_ids().map(|c| (b.dim(c) + 1) as usize).collect();
    let mut classes = usize::MAX;
    loop {
        let mut palette: HashMap<(usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();
        let mut next = |p: &SimplicialPoset, co: &[Vec<CellId>], col: &[usize]| -> Vec<usize> {
            p.cell_ids()
                .map(|c| {
                    let mut f: Vec<usize> = faces_of(p, c).iter().map(|x| col[x.index()]).collect();
                    let mut u: Vec<usize> = co[c.index()].iter().map(|x| col[x.index()]).collect();
                    f.sort_unstable();
                    u.sort_unstable();
                    let key = (col[c.index()], f, u);
                    let n = palette.len();
                    *palette.entry(key).or_insert(n)
                })
                .collect()
        };
        let na = next(a, &co_a, &ca);
        let nb = next(b, &co_b, &cb);
        let count = palette.len();
        ca = na;
        cb = nb;
        if count == classes {
            return (ca, cb);
        }
        classes = count;
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &SimplicialPoset,
    b: &SimplicialPoset,
    ca: &[usize],
    cb: &[usize],
    order: &[CellId],
    k: usize,
    map: &mut Vec<Option<CellId>>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(&x) = order.get(k) else {
        return true;
    };
    let mut want: Vec<CellId> = faces_of(a, x).iter().map(|f| map[f.index()].unwrap()).collect();
    want.sort_unstable();
    for y in b.cell_ids() {
        if used[y.index()] || cb[y.index()] != ca[x.index()] || b.dim(y) != a.dim(x) {
            continue;
        }
        let mut have = faces_of(b, y).to_vec();
        have.sort_unstable();
        if have != want {
            continue;
        }
        map[x.index()] = Some(y);
        used[y.index()] = true;
        if search(a, b, ca, cb, order, k + 1, map, used) {
            return true;
        }
        map[x.index()] = None;
        used[y.index()] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::SimplicialComplex;

    #[test]
    fn relabelled_complexes_are_isomorphic() {
        let k = SimplicialComplex::from_facets([vec![0u32, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let l = k.relabel(|v| 3 - v);
        assert!(is_isomorphic(&k.to_poset(), &l.to_poset()));
    }

    #[test]
    fn path_and_star_differ() {
        let path = SimplicialComplex::from_facets([vec![0u32, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let star = SimplicialComplex::from_facets([vec![0u32, 1], vec![0, 2], vec![0, 3]]).unwrap();
        assert!(!is_isomorphic(&path.to_poset(), &star.to_poset()));
    }
}
