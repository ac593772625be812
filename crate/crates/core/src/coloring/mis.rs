use super::adjacency;
use crate::instances::Multigraph;
use crate::mask::{self, SubsetMask};

/// All maximal independent sets in ascending mask order (Bron–Kerbosch on
/// the complement with pivoting). Vertices with a loop are never included.
pub fn enumerate_maximal_independent_sets(g: &Multigraph) -> Vec<SubsetMask> {
    let adj = adjacency(g);
    let n = g.n();
    let looped = (0..n).filter(|&v| adj[v] >> v & 1 == 1).fold(0, |m, v| m | 1u64 << v);
    let mut out = Vec::new();
    bk(&adj, 0, mask::full(n) & !looped, 0, &mut out);
    out.sort_unstable();
    out
}

fn bk(adj: &[SubsetMask], r: SubsetMask, mut p: SubsetMask, mut x: SubsetMask, out: &mut Vec<SubsetMask>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // any maximal extension contains the pivot or one of its neighbours
    let pivot = mask::elements(p | x).max_by_key(|&u| mask::size(p & (adj[u] | 1 << u))).unwrap();
    for v in mask::elements(p & (adj[pivot] | 1 << pivot)) {
        let closed = adj[v] | 1 << v;
        bk(adj, r | 1 << v, p & !closed, x & !closed, out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Number of dominating sets, by brute force over all masks.
pub fn count_dominating_sets(g: &Multigraph) -> u64 {
    let adj = adjacency(g);
    let n = g.n();
    let u = mask::full(n);
    (0..=u)
        .filter(|&d| mask::elements(d).fold(d, |m, v| m | adj[v]) == u)
        .count() as u64
}

/// `(2^(d+1) - 1)^(n/(d+1))`, an upper bound on the number of dominating
/// sets of a graph with maximum degree `d`.
pub fn dominating_set_bound(d: u64, n: usize) -> f64 {
    let b = (2f64).powi(d as i32 + 1) - 1.0;
    b.powf(n as f64 / (d as f64 + 1.0))
}
