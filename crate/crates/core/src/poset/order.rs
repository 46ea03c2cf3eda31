use super::{CellId, PosetError, SimplicialComplex, SimplicialPoset};

/// Order complex of the poset on elements `0..n` with strict order `less`:
/// its simplices are the chains.
pub fn order_complex(n: usize, less: impl Fn(usize, usize) -> bool) -> SimplicialComplex {
    // successors[x] = elements strictly above x
    let successors: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| less(x, y)).collect()).collect();
    let mut chains: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn extend(successors: &[Vec<usize>], stack: &mut Vec<usize>, chains: &mut Vec<Vec<u32>>) {
        let top = *stack.last().unwrap();
        for &y in &successors[top] {
            stack.push(y);
            chains.push(stack.iter().map(|&v| v as u32).collect());
            extend(successors, stack, chains);
            stack.pop();
        }
    }
    for x in 0..n {
        stack.push(x);
        chains.push(vec![x as u32]);
        extend(&successors, &mut stack, &mut chains);
        stack.pop();
    }
    SimplicialComplex::from_simplices(chains).expect("chains are closed under subsets")
}

/// Order complex of the given cells of `p`, labelled by cell id.
fn chains_of(p: &SimplicialPoset, cells: &[CellId]) -> SimplicialComplex {
    let complex = order_complex(cells.len(), |a, b| {
        let (x, y) = (cells[a], cells[b]);
        x != y && p.is_below(x, y)
    });
    complex.relabel(|i| cells[i as usize].0)
}

/// `sd(X)`: the order complex of `X` minus its least element. Vertices are
/// labelled by cell id.
pub fn barycentric_subdivision(p: &SimplicialPoset) -> SimplicialComplex {
    let cells: Vec<CellId> = p.cell_ids().skip(1).collect();
    chains_of(p, &cells)
}

/// The order complexes of the closed and half-open upper intervals
/// `[σ, ·]` and `(σ, ·]`, labelled by cell id.
pub fn upper_complexes(
    p: &SimplicialPoset,
    sigma: CellId,
) -> Result<(SimplicialComplex, SimplicialComplex), PosetError> {
    if !p.contains(sigma) {
        return Err(PosetError::UnknownCell { cell: sigma.0 as u64 });
    }
    let closed: Vec<CellId> = p.cell_ids().filter(|&c| p.is_below(sigma, c)).collect();
    let open: Vec<CellId> = closed.iter().copied().filter(|&c| c != sigma).collect();
    Ok((chains_of(p, &closed), chains_of(p, &open)))
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
    fn antichain_and_chain() {
        let anti = order_complex(4, |_, _| false);
        assert_eq!(anti.len(), 4);
        assert_eq!(anti.dim(), 0);
        let chain = order_complex(3, |a, b| a < b);
        assert_eq!(chain, SimplicialComplex::simplex(3));
    }

    #[test]
    fn sd_of_point_and_double_edge() {
        let point = SimplicialComplex::simplex(1).to_poset();
        assert_eq!(barycentric_subdivision(&point).len(), 1);
        let sd = barycentric_subdivision(&double_edge());
        // 4 vertices, 4 edges: a 4-cycle
        assert_eq!(sd.vertices().len(), 4);
        assert_eq!(sd.len(), 8);
        assert_eq!(sd.dim(), 1);
    }

    #[test]
    fn sd_of_triangle_has_six_top_simplices() {
        let tri = SimplicialComplex::simplex(3).to_poset();
        let sd = barycentric_subdivision(&tri);
        assert_eq!(sd.simplices().iter().filter(|s| s.len() == 3).count(), 6);
    }

    #[test]
    fn upper_complexes_examples() {
        let p = double_edge();
        let (_, open) = upper_complexes(&p, p.least()).unwrap();
        assert_eq!(open, barycentric_subdivision(&p));
        let (closed, open) = upper_complexes(&p, CellId(3)).unwrap();
        assert_eq!(closed.len(), 1);
        assert!(open.is_empty());
        let (closed, open) = upper_complexes(&p, CellId(1)).unwrap();
        assert_eq!(open.vertices(), vec![3, 4]);
        assert_eq!(open.len(), 2);
        // D(a) is the cone: a, two edges, and two chains a < e
        assert_eq!(closed.len(), 5);
        assert!(upper_complexes(&p, CellId(42)).is_err());
    }
}
