use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rand::Rng as _;

use super::adjacency;
use crate::instances::Multigraph;
use crate::{Counters, Error, Result, Seed};

/// Allowed colors per vertex, bit `c` for color `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorLists(pub Vec<u64>);

impl ColorLists {
    pub fn uniform(n: usize, k: usize) -> Self {
        Self(vec![(1u64 << k) - 1; n])
    }
}

fn options(list: u64) -> Vec<usize> {
    (0..64).filter(|&c| list >> c & 1 == 1).collect()
}

/// List coloring with lists of size at most two, by 2-SAT: vertex `v`
/// gets literal `x_v` ("second color of `L(v)`"), each conflicting pair of
/// choices on an edge is a 2-clause, solved through the strongly connected
/// components of the implication graph. Returns `None` when an empty list
/// is present or no coloring exists.
pub fn solve_list_two_coloring(g: &Multigraph, lists: &ColorLists) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if lists.0.len() != n {
        return Err(Error::Dimension(format!("{} lists for {n} vertices", lists.0.len())));
    }
    let opts: Vec<Vec<usize>> = lists.0.iter().map(|&l| options(l)).collect();
    if let Some(v) = opts.iter().position(|o| o.len() > 2) {
        return Err(Error::Precondition(format!("list of vertex {} has more than two colors", v + 1)));
    }
    if opts.iter().any(|o| o.is_empty()) {
        return Ok(None);
    }
    // node 2v: x_v true, node 2v+1: x_v false
    let lit = |v: usize, val: bool| 2 * v + usize::from(!val);
    let mut imp: DiGraph<(), ()> = DiGraph::with_capacity(2 * n, 0);
    for _ in 0..2 * n {
        imp.add_node(());
    }
    let mut clause = |a: usize, b: usize| {
        imp.add_edge(((a ^ 1) as u32).into(), (b as u32).into(), ());
        imp.add_edge(((b ^ 1) as u32).into(), (a as u32).into(), ());
    };
    for (v, o) in opts.iter().enumerate() {
        if o.len() == 1 {
            clause(lit(v, false), lit(v, false));
        }
    }
    let adj = adjacency(g);
    for u in 0..n {
        if adj[u] >> u & 1 == 1 {
            return Ok(None);
        }
        for v in (u + 1..n).filter(|&v| adj[u] >> v & 1 == 1) {
            for (i, &cu) in opts[u].iter().enumerate() {
                for (j, &cv) in opts[v].iter().enumerate() {
                    if cu == cv {
                        clause(lit(u, i == 0), lit(v, j == 0));
                    }
                }
            }
        }
    }
    let sccs = tarjan_scc(&imp);
    let mut comp = vec![0usize; 2 * n];
    for (i, c) in sccs.iter().enumerate() {
        for node in c {
            comp[node.index()] = i;
        }
    }
    let mut colors = Vec::with_capacity(n);
    for v in 0..n {
        let (t, f) = (comp[lit(v, true)], comp[lit(v, false)]);
        if t == f {
            return Ok(None);
        }
        // components come out in reverse topological order
        colors.push(opts[v][usize::from(t < f)]);
    }
    if !g.is_proper_coloring(&colors) {
        return Err(Error::Internal("2-SAT assignment is not a proper coloring".into()));
    }
    Ok(Some(colors))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringOutcome {
    pub coloring: Option<Vec<usize>>,
    pub counters: Counters,
}

/// `⌈1.5^n⌉`, saturating.
pub fn trial_count_15n(n: usize) -> u64 {
    if n > 80 {
        return u64::MAX;
    }
    let three = 3u128.pow(n as u32);
    let two = 1u128 << n;
    u64::try_from(three.div_ceil(two)).unwrap_or(u64::MAX)
}

/// Randomized 3-Coloring: each trial drops one color per vertex uniformly
/// at random and solves the resulting list-2-coloring. Runs
/// `min(budget, ⌈1.5^n⌉)` trials, with `budget` defaulting to `⌈1.5^n⌉`.
///
/// Counters: `trials_budget`, `trials_run`.
pub fn three_coloring_15n(g: &Multigraph, seed: Seed, budget: Option<u64>) -> Result<ColoringOutcome> {
    let n = g.n();
    let full = trial_count_15n(n);
    if budget.is_none() && n > 40 {
        return Err(Error::BudgetExceeded(format!("⌈1.5^{n}⌉ trials; pass an explicit budget")));
    }
    let trials = budget.map_or(full, |b| b.min(full));
    let mut counters = Counters::new();
    counters.set("trials_budget", trials);
    for t in 0..trials {
        counters.incr("trials_run");
        let mut rng = seed.derive(t).rng();
        let lists = ColorLists((0..n).map(|_| 0b111 & !(1u64 << rng.random_range(0..3))).collect());
        if let Some(c) = solve_list_two_coloring(g, &lists)? {
            return Ok(ColoringOutcome {
                coloring: Some(c),
                counters,
            });
        }
    }
    Ok(ColoringOutcome {
        coloring: None,
        counters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_examples() {
        let one = Multigraph::empty(1, false);
        assert_eq!(solve_list_two_coloring(&one, &ColorLists(vec![0b1])).unwrap(), Some(vec![0]));
        let edge = Multigraph::undirected(2, &[(0, 1)]).unwrap();
        assert_eq!(solve_list_two_coloring(&edge, &ColorLists(vec![0b1, 0b1])).unwrap(), None);
        let c4 = Multigraph::cycle(4);
        let c = solve_list_two_coloring(&c4, &ColorLists::uniform(4, 2)).unwrap().unwrap();
        assert!(c4.is_proper_coloring(&c));
        assert_eq!(solve_list_two_coloring(&one, &ColorLists(vec![0])).unwrap(), None);
        assert!(solve_list_two_coloring(&one, &ColorLists(vec![0b111])).is_err());
        let c5 = Multigraph::cycle(5);
        assert_eq!(solve_list_two_coloring(&c5, &ColorLists::uniform(5, 2)).unwrap(), None);
    }

    #[test]
    fn lists_with_distinct_pairs() {
        let tri = Multigraph::complete(3);
        let lists = ColorLists(vec![0b011, 0b110, 0b101]);
        let c = solve_list_two_coloring(&tri, &lists).unwrap().unwrap();
        assert!(tri.is_proper_coloring(&c));
        for (v, &col) in c.iter().enumerate() {
            assert!(lists.0[v] >> col & 1 == 1);
        }
    }

    #[test]
    fn trial_counts() {
        assert_eq!(trial_count_15n(0), 1);
        assert_eq!(trial_count_15n(1), 2);
        assert_eq!(trial_count_15n(2), 3);
        assert_eq!(trial_count_15n(14), 292);
    }

    #[test]
    fn fifteen_examples() {
        let tri = Multigraph::complete(3);
        let c = three_coloring_15n(&tri, Seed(3), None).unwrap().coloring.unwrap();
        let mut sorted = c.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
        let k4 = Multigraph::complete(4);
        let out = three_coloring_15n(&k4, Seed(3), None).unwrap();
        assert!(out.coloring.is_none());
        assert_eq!(out.counters.get("trials_run"), trial_count_15n(4));
        let capped = three_coloring_15n(&k4, Seed(3), Some(2)).unwrap();
        assert_eq!(capped.counters.get("trials_budget"), 2);
    }
}
