//! Graph coloring: the `1.5^n` list-coloring algorithm, coloring as Set
//! Cover over maximal independent sets, and the container variant for
//! regular graphs. Colors are 0-based.

mod list;
mod mis;

pub use list::{solve_list_two_coloring, three_coloring_15n, trial_count_15n, ColorLists, ColoringOutcome};
pub use mis::{count_dominating_sets, dominating_set_bound, enumerate_maximal_independent_sets};

use crate::covering::{self, CoverDecision, MAX_DENSE_N};
use crate::instances::{Multigraph, SetSystem};
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result};

/// Symmetric adjacency masks (arcs count in both directions).
pub(crate) fn adjacency(g: &Multigraph) -> Vec<SubsetMask> {
    let mut adj = g.neighbor_masks();
    for u in 0..g.n() {
        for v in mask::elements(adj[u]) {
            adj[v] |= 1 << u;
        }
    }
    adj
}

/// Whether `χ(G) <= k`, as Set Cover with the maximal independent sets.
/// The trimmed variant works on `↑S` only, which consists of dominating sets.
///
/// Counters: `mis_count` plus the Set Cover counters.
pub fn k_coloring_via_cover(g: &Multigraph, k: usize, trimmed: bool) -> Result<CoverDecision> {
    let n = g.n();
    if n > MAX_DENSE_N {
        return Err(Error::BudgetExceeded(format!("n = {n} exceeds {MAX_DENSE_N}")));
    }
    let mis = enumerate_maximal_independent_sets(g);
    let s = SetSystem::new(n, mis)?;
    let out = if trimmed {
        covering::set_cover_trimmed(&s, k)?
    } else {
        covering::set_cover_2n(&s, k)?
    };
    let mut counters = Counters::new();
    counters.set("mis_count", s.len() as u64);
    counters.merge(&out.counters);
    Ok(CoverDecision {
        decision: out.decision,
        counters,
    })
}

/// Checks that every maximal independent set lies in some container.
pub fn verify_containers(g: &Multigraph, containers: &[SubsetMask]) -> Result<()> {
    for s in enumerate_maximal_independent_sets(g) {
        if !containers.iter().any(|&c| mask::is_subset(s, c)) {
            return Err(Error::Precondition(format!("maximal independent set {s:#b} is in no container")));
        }
    }
    Ok(())
}

/// Largest graph on which containers are verified.
pub const CONTAINER_VERIFY_MAX_N: usize = 20;

fn multisets(m: usize, k: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..m {
        cur.push(i);
        multisets(m, k, out, cur, i);
        cur.pop();
    }
}

/// k-Coloring of a regular graph given containers for its independent
/// sets: tries every multiset of `k` containers with the containers Set
/// Cover algorithm and the independence test as oracle.
///
/// Counters: `tuples`, `tuples_run`, `max_container`, `min_container`,
/// plus the last run's containers counters summed.
pub fn regular_coloring_with_containers(
    g: &Multigraph,
    k: usize,
    containers: &[SubsetMask],
    eps_prime: f64,
) -> Result<CoverDecision> {
    let n = g.n();
    if g.regular_degree().is_none() {
        return Err(Error::Precondition("graph is not regular".into()));
    }
    if n <= CONTAINER_VERIFY_MAX_N {
        verify_containers(g, containers)?;
    }
    let mut counters = Counters::new();
    counters.set("max_container", containers.iter().map(|&c| mask::size(c) as u64).max().unwrap_or(0));
    counters.set("min_container", containers.iter().map(|&c| mask::size(c) as u64).min().unwrap_or(0));
    if k == 0 {
        return Ok(CoverDecision {
            decision: n == 0,
            counters,
        });
    }
    let adj = adjacency(g);
    let independent = |x: SubsetMask| mask::elements(x).all(|v| adj[v] & x == 0);
    let mut tuples = Vec::new();
    multisets(containers.len(), k, &mut tuples, &mut Vec::new(), 0);
    counters.set("tuples", tuples.len() as u64);
    for t in tuples {
        counters.incr("tuples_run");
        let chosen: Vec<SubsetMask> = t.iter().map(|&i| containers[i]).collect();
        let out = covering::set_cover_with_containers(&independent, n, &chosen, eps_prime)?;
        counters.add("iterations", out.counters.get("iterations"));
        counters.add("masks_touched", out.counters.get("masks_touched"));
        if out.decision {
            return Ok(CoverDecision {
                decision: true,
                counters,
            });
        }
    }
    Ok(CoverDecision {
        decision: false,
        counters,
    })
}
