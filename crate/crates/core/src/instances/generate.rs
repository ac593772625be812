//! Seeded random and planted instance generators.

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{CnfFormula, Lit, Multigraph, SetSystem, WeightedInstance};
use crate::mask::{self, SubsetMask};
use crate::{Error, Result, Seed};

fn random_clause(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Lit> {
    index::sample(rng, n, k)
        .into_iter()
        .map(|v| Lit {
            var: v,
            negated: rng.random(),
        })
        .collect()
}

/// `m` clauses of width exactly `k` over `n` variables.
pub fn random_kcnf(n: usize, m: usize, k: usize, seed: Seed) -> Result<CnfFormula> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let mut rng = seed.rng();
    let clauses = (0..m).map(|_| random_clause(&mut rng, n, k)).collect();
    CnfFormula::new(n, clauses)
}

/// A random `k`-CNF satisfied by the returned hidden assignment: clauses
/// falsified by it are redrawn.
pub fn planted_kcnf(n: usize, m: usize, k: usize, seed: Seed) -> Result<(CnfFormula, Vec<bool>)> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let mut rng = seed.rng();
    let hidden: Vec<bool> = (0..n).map(|_| rng.random()).collect();
    let mut clauses = Vec::with_capacity(m);
    while clauses.len() < m {
        let c = random_clause(&mut rng, n, k);
        if c.iter().any(|l| l.eval(hidden[l.var])) {
            clauses.push(c);
        }
    }
    Ok((CnfFormula::new(n, clauses)?, hidden))
}

/// Erdős–Rényi graph; when directed each ordered pair is an arc independently.
pub fn random_graph(n: usize, p: f64, directed: bool, seed: Seed) -> Multigraph {
    let mut rng = seed.rng();
    let mut g = Multigraph::empty(n, directed);
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.random_bool(p.clamp(0.0, 1.0)) {
                if directed {
                    g.add_arc(u, v, 1).unwrap();
                } else {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
    }
    g
}

/// Random digraph whose arcs carry multiplicities in `1..=max_mult`.
pub fn random_multidigraph(n: usize, p: f64, max_mult: u64, seed: Seed) -> Multigraph {
    let mut rng = seed.rng();
    let mut g = Multigraph::empty(n, true);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p.clamp(0.0, 1.0)) {
                g.add_arc(u, v, rng.random_range(1..=max_mult.max(1))).unwrap();
            }
        }
    }
    g
}

/// Uniform-ish `d`-regular simple graph from the pairing model, rejecting
/// pairings that produce loops or parallel edges.
pub fn random_regular(n: usize, d: usize, seed: Seed) -> Result<Multigraph> {
    if (d >= n && !(n == 0 && d == 0)) || (d * n) % 2 == 1 {
        return Err(Error::InvalidParameters(format!("no {d}-regular graph on {n} vertices")));
    }
    let mut rng = seed.rng();
    const ATTEMPTS: usize = 100_000;
    'attempt: for _ in 0..ATTEMPTS {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(&mut rng);
        let mut g = Multigraph::empty(n, false);
        for pair in points.chunks(2) {
            if g.add_edge(pair[0], pair[1]).is_err() {
                continue 'attempt;
            }
        }
        return Ok(g);
    }
    Err(Error::BudgetExceeded(format!(
        "pairing model found no simple {d}-regular graph on {n} vertices"
    )))
}

/// Random graph with a hidden proper `k`-coloring: vertices get uniform
/// colors and differently colored pairs are joined with probability `p`.
pub fn planted_colorable(n: usize, k: usize, p: f64, seed: Seed) -> (Multigraph, Vec<usize>) {
    let mut rng = seed.rng();
    let colors: Vec<usize> = (0..n).map(|_| rng.random_range(0..k.max(1))).collect();
    let mut g = Multigraph::empty(n, false);
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] != colors[v] && rng.random_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    (g, colors)
}

/// `m` random sets over `n` elements, each of uniform size in `1..=max_size`.
pub fn random_set_system(n: usize, m: usize, max_size: usize, seed: Seed) -> Result<SetSystem> {
    let mut rng = seed.rng();
    let max_size = max_size.clamp(1, n.max(1));
    let sets = (0..m)
        .map(|_| {
            let s = rng.random_range(1..=max_size).min(n);
            mask::from_elements(index::sample(&mut rng, n, s))
        })
        .collect();
    SetSystem::new(n, sets)
}

/// A random partition of the universe into `k` non-empty blocks mixed with
/// `extra` random sets of size at most `extra_size`, shuffled. The blocks are
/// returned separately.
pub fn planted_cover(
    n: usize,
    k: usize,
    extra: usize,
    extra_size: usize,
    seed: Seed,
) -> Result<(SetSystem, Vec<SubsetMask>)> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let mut rng = seed.rng();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut blocks = vec![0u64; k];
    for (i, &e) in order.iter().enumerate() {
        let b = if i < k { i } else { rng.random_range(0..k) };
        blocks[b] |= 1u64 << e;
    }
    let noise = random_set_system(n, extra, extra_size, Seed(rng.random()))?;
    let mut sets: Vec<SubsetMask> = blocks.iter().copied().chain(noise.sets().iter().copied()).collect();
    sets.shuffle(&mut rng);
    Ok((SetSystem::new(n, sets)?, blocks))
}

/// Random weights in `0..=max_weight` redrawn until their total is a
/// multiple of `k`; capacity `c = total / k`.
pub fn tight_bin_packing(n: usize, k: usize, max_weight: u128, seed: Seed) -> Result<WeightedInstance> {
    if k == 0 {
        return Err(Error::InvalidParameters("need k >= 1".into()));
    }
    let mut rng = seed.rng();
    loop {
        let w: Vec<u128> = (0..n).map(|_| rng.random_range(0..=max_weight)).collect();
        let total: u128 = w.iter().sum();
        if total.is_multiple_of(k as u128) {
            return Ok(WeightedInstance::bin_packing(w, total / k as u128, k));
        }
    }
}

/// A YES instance of bin packing with every bin exactly full: items are
/// dealt into `k` bins and each bin's load `c` is split randomly among its
/// items. Returns the bin of every item.
pub fn planted_bin_packing(n: usize, k: usize, c: u128, seed: Seed) -> Result<(WeightedInstance, Vec<usize>)> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let mut rng = seed.rng();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut bin_of = vec![0; n];
    for (i, &e) in order.iter().enumerate() {
        bin_of[e] = if i < k { i } else { rng.random_range(0..k) };
    }
    let mut w = vec![0u128; n];
    for b in 0..k {
        let items: Vec<usize> = (0..n).filter(|&e| bin_of[e] == b).collect();
        let mut cuts: Vec<u128> = (1..items.len()).map(|_| rng.random_range(0..=c)).collect();
        cuts.push(0);
        cuts.push(c);
        cuts.sort_unstable();
        for (j, &e) in items.iter().enumerate() {
            w[e] = cuts[j + 1] - cuts[j];
        }
    }
    Ok((WeightedInstance::bin_packing(w, c, k), bin_of))
}

/// Weights uniform in `[1, 2^n]` and target `t = w(first n/2 items)`. The
/// planted solution mask is returned for tests.
pub fn planted_subset_sum(n: usize, seed: Seed) -> Result<(WeightedInstance, SubsetMask)> {
    if n % 2 == 1 || n > 62 {
        return Err(Error::InvalidParameters(format!("need even n <= 62, got {n}")));
    }
    let mut rng = seed.rng();
    let w: Vec<u128> = (0..n).map(|_| rng.random_range(1..=(1u128 << n))).collect();
    Ok(planted_from_weights(w))
}

/// Target `t = w(first n/2 items)` for given weights.
pub fn planted_from_weights(weights: Vec<u128>) -> (WeightedInstance, SubsetMask) {
    let half = mask::full(weights.len() / 2);
    let t = mask::elements(half).map(|i| weights[i]).sum();
    (WeightedInstance::subset_sum(weights, t), half)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kcnf_shape() {
        let f = random_kcnf(5, 10, 3, Seed(1)).unwrap();
        assert_eq!(f.num_clauses(), 10);
        assert!(f.clauses().iter().all(|c| c.len() == 3));
        assert_eq!(f, random_kcnf(5, 10, 3, Seed(1)).unwrap());
        assert!(random_kcnf(2, 1, 3, Seed(1)).is_err());
        let (p, a) = planted_kcnf(8, 40, 3, Seed(2)).unwrap();
        assert!(p.eval(&a));
    }

    #[test]
    fn regular_graphs() {
        let g = random_regular(6, 2, Seed(3)).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        let h = random_regular(10, 3, Seed(4)).unwrap();
        assert_eq!(h.regular_degree(), Some(3));
        assert!(random_regular(4, 5, Seed(0)).is_err());
        assert!(random_regular(5, 3, Seed(0)).is_err());
    }

    #[test]
    fn planted_instances_are_yes() {
        let (g, c) = planted_colorable(12, 3, 0.6, Seed(5));
        assert!(g.is_proper_coloring(&c));
        let (s, blocks) = planted_cover(10, 4, 5, 3, Seed(6)).unwrap();
        assert_eq!(blocks.iter().fold(0, |a, b| a | b), s.universe());
        assert!(blocks.iter().all(|b| s.sets().contains(b)));
        let (b, bins) = planted_bin_packing(9, 3, 7, Seed(7)).unwrap();
        for j in 0..3 {
            let load: u128 = (0..9).filter(|&e| bins[e] == j).map(|e| b.weights[e]).sum();
            assert_eq!(load, 7);
        }
        let t = tight_bin_packing(7, 3, 8, Seed(8)).unwrap();
        assert_eq!(t.total().unwrap(), 3 * t.capacity.unwrap());
    }

    #[test]
    fn planted_subset_sum_target() {
        let (w, planted) = planted_subset_sum(4, Seed(9)).unwrap();
        assert_eq!(w.target, Some(w.weights[0] + w.weights[1]));
        assert_eq!(planted, 0b11);
        assert!(w.weights.iter().all(|&x| (1..=16).contains(&x)));
        let (f, _) = planted_from_weights(vec![1, 1]);
        assert_eq!(f.target, Some(1));
        assert!(planted_subset_sum(3, Seed(0)).is_err());
    }
}
