//! Brute-force reference implementations. Nothing here depends on the
//! solver modules; every function enumerates its whole search space.

use std::time::{Duration, Instant};

use crate::instances::{CnfFormula, Multigraph, SetSystem, WeightedInstance};
use crate::mask::{self, SubsetMask};
use crate::{Error, Result};

/// Limits on how much an oracle may enumerate.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_states: u128,
    pub wall_clock: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_states: 1 << 30,
            wall_clock: None,
        }
    }
}

struct Guard {
    start: Instant,
    cap: Option<Duration>,
    ticks: u64,
}

impl OracleBudget {
    fn admit(&self, what: &str, states: Option<u128>) -> Result<Guard> {
        match states {
            Some(s) if s <= self.max_states => Ok(Guard {
                start: Instant::now(),
                cap: self.wall_clock,
                ticks: 0,
            }),
            _ => Err(Error::BudgetExceeded(format!(
                "{what}: estimated state count exceeds {}",
                self.max_states
            ))),
        }
    }
}

impl Guard {
    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.ticks += 1;
        if self.ticks & 0xffff == 0 {
            if let Some(cap) = self.cap {
                if self.start.elapsed() > cap {
                    return Err(Error::BudgetExceeded(format!("wall clock cap {cap:?}")));
                }
            }
        }
        Ok(())
    }
}

fn pow(base: u128, exp: usize) -> Option<u128> {
    base.checked_pow(exp.try_into().ok()?)
}

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |a, b| a.checked_mul(b))
}

/// A satisfying assignment, found by trying all `2^n`.
pub fn sat(phi: &CnfFormula, budget: &OracleBudget) -> Result<Option<Vec<bool>>> {
    let n = phi.num_vars();
    let mut g = budget.admit("sat", pow(2, n))?;
    for bits in 0..(1u128 << n) {
        g.tick()?;
        let a: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        if phi.eval(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// A proper coloring with colors `0..k`, by depth-first enumeration of
/// color assignments in vertex order.
pub fn coloring(g: &Multigraph, k: usize, budget: &OracleBudget) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let mut guard = budget.admit("coloring", pow(k as u128, n))?;
    let mut colors = vec![0usize; n];
    fn go(g: &Multigraph, k: usize, v: usize, colors: &mut [usize], guard: &mut Guard) -> Result<bool> {
        if v == g.n() {
            return Ok(true);
        }
        for c in 0..k {
            guard.tick()?;
            if (0..v).all(|u| !(g.has_edge(u, v) || g.has_edge(v, u)) || colors[u] != c) {
                colors[v] = c;
                if go(g, k, v + 1, colors, guard)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    Ok(go(g, k, 0, &mut colors, &mut guard)?.then_some(colors))
}

/// Number of ordered `k`-tuples of sets whose union is the universe, each
/// set counted with its multiplicity.
pub fn set_cover_count(s: &SetSystem, k: usize, budget: &OracleBudget) -> Result<u128> {
    let m = s.len();
    let mut g = budget.admit("set cover", pow(m as u128, k))?;
    let universe = s.universe();
    let mut idx = vec![0usize; k];
    let mut count = 0u128;
    if k > 0 && m == 0 {
        return Ok(0);
    }
    loop {
        g.tick()?;
        let union = idx.iter().fold(0, |a, &i| a | s.sets()[i]);
        if union == universe {
            count += idx.iter().map(|&i| s.multiplicity(i) as u128).product::<u128>();
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(count);
            }
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// A subset with weight exactly the target.
pub fn subset_sum(inst: &WeightedInstance, budget: &OracleBudget) -> Result<Option<SubsetMask>> {
    let n = inst.n();
    let t = inst.target()?;
    if n > 63 {
        return Err(Error::BudgetExceeded("subset sum: n > 63".into()));
    }
    let mut g = budget.admit("subset sum", pow(2, n))?;
    for m in 0..(1u64 << n) {
        g.tick()?;
        if inst.weight_of(m) == t {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// An assignment of items to `k` bins with every load at most `c`.
pub fn bin_packing(inst: &WeightedInstance, budget: &OracleBudget) -> Result<Option<Vec<usize>>> {
    let (c, k) = inst.capacity_and_bins()?;
    let n = inst.n();
    if k == 0 {
        return Ok((n == 0).then(Vec::new));
    }
    let mut g = budget.admit("bin packing", pow(k as u128, n))?;
    let mut bin = vec![0usize; n];
    loop {
        g.tick()?;
        let mut load = vec![0u128; k];
        for (i, &b) in bin.iter().enumerate() {
            load[b] += inst.weights[i];
        }
        if load.iter().all(|&l| l <= c) {
            return Ok(Some(bin));
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(None);
            }
            bin[pos] += 1;
            if bin[pos] < k {
                break;
            }
            bin[pos] = 0;
            pos += 1;
        }
    }
}

/// Whether an undirected graph has a perfect matching: the lowest unmatched
/// vertex is matched to every possible partner in turn.
pub fn perfect_matching(g: &Multigraph, budget: &OracleBudget) -> Result<bool> {
    let n = g.n();
    let est = (1..n as u128).step_by(2).try_fold(1u128, |a, b| a.checked_mul(b));
    let mut guard = budget.admit("matching", est)?;
    fn go(g: &Multigraph, free: SubsetMask, guard: &mut Guard) -> Result<bool> {
        if free == 0 {
            return Ok(true);
        }
        let v = free.trailing_zeros() as usize;
        for u in mask::elements(free & !(1u64 << v)) {
            guard.tick()?;
            if g.has_edge(v, u) && go(g, free & !(1u64 << v) & !(1u64 << u), guard)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    go(g, mask::full(n), &mut guard)
}

/// Number of Hamiltonian cycles. Directed cycles are counted once per cyclic
/// sequence, weighted by the product of arc multiplicities (so a 2-cycle
/// `u -> v -> u` counts for `n = 2`); undirected cycles need `n >= 3` and
/// are counted once each.
pub fn ham_count(g: &Multigraph, budget: &OracleBudget) -> Result<u128> {
    ham_count_filtered(g, budget, |_| true)
}

/// Number of directed Hamiltonian cycles using the arc `t -> s`, weighted by
/// arc multiplicities.
pub fn ham_cycles_through_arc(g: &Multigraph, t: usize, s: usize, budget: &OracleBudget) -> Result<u128> {
    let d = if g.is_directed() { g.clone() } else { g.to_directed() };
    ham_count_filtered(&d, budget, |cyc| {
        let n = cyc.len();
        (0..n).any(|i| cyc[i] == t && cyc[(i + 1) % n] == s)
    })
}

fn ham_count_filtered(g: &Multigraph, budget: &OracleBudget, keep: impl Fn(&[usize]) -> bool) -> Result<u128> {
    let n = g.n();
    if n < 2 || (!g.is_directed() && n < 3) {
        return Ok(0);
    }
    let mut guard = budget.admit("hamiltonian cycles", factorial(n - 1))?;
    let mut path = vec![0usize];
    let mut total = 0u128;
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &Multigraph,
        path: &mut Vec<usize>,
        used: SubsetMask,
        weight: u128,
        total: &mut u128,
        guard: &mut Guard,
        keep: &dyn Fn(&[usize]) -> bool,
    ) -> Result<()> {
        let n = g.n();
        let last = *path.last().unwrap();
        if path.len() == n {
            let closing = g.mult(last, path[0]) as u128;
            if closing > 0 && (g.is_directed() || path[1] < path[n - 1]) && keep(path) {
                *total += weight * closing;
            }
            return Ok(());
        }
        for v in 1..n {
            guard.tick()?;
            let m = g.mult(last, v) as u128;
            if used >> v & 1 == 0 && m > 0 {
                path.push(v);
                go(g, path, used | 1 << v, weight * m, total, guard, keep)?;
                path.pop();
            }
        }
        Ok(())
    }
    go(g, &mut path, 1, 1, &mut total, &mut guard, &keep)?;
    Ok(total)
}

/// Number of spanning out-branchings rooted at `s`, weighted by arc
/// multiplicities: every other vertex picks one in-arc, and the choice
/// counts when following parents from any vertex reaches `s`.
pub fn out_branching_count(g: &Multigraph, s: usize, budget: &OracleBudget) -> Result<u128> {
    let n = g.n();
    let others: Vec<usize> = (0..n).filter(|&v| v != s).collect();
    let est = others.iter().try_fold(1u128, |a, _| a.checked_mul(n as u128));
    let mut guard = budget.admit("out-branchings", est)?;
    let mut parent = vec![usize::MAX; n];
    let mut total = 0u128;
    fn go(
        g: &Multigraph,
        s: usize,
        others: &[usize],
        i: usize,
        parent: &mut [usize],
        weight: u128,
        total: &mut u128,
        guard: &mut Guard,
    ) -> Result<()> {
        if i == others.len() {
            let n = g.n();
            let ok = others.iter().all(|&v| {
                let mut cur = v;
                for _ in 0..n {
                    if cur == s {
                        return true;
                    }
                    cur = parent[cur];
                }
                cur == s
            });
            if ok {
                *total += weight;
            }
            return Ok(());
        }
        let v = others[i];
        for u in 0..g.n() {
            guard.tick()?;
            let m = g.mult(u, v) as u128;
            if m > 0 {
                parent[v] = u;
                go(g, s, others, i + 1, parent, weight * m, total, guard)?;
            }
        }
        Ok(())
    }
    if n > 0 {
        go(g, s, &others, 0, &mut parent, 1, &mut total, &mut guard)?;
    }
    Ok(total)
}

/// Every `X ⊆ U` that intersects all sets of `family`, ascending.
pub fn hitting_set_profile(family: &SetSystem, budget: &OracleBudget) -> Result<Vec<SubsetMask>> {
    let n = family.n();
    let mut g = budget.admit("hitting sets", pow(2, n))?;
    let mut out = Vec::new();
    for x in 0..=mask::full(n) {
        g.tick()?;
        if family.sets().iter().all(|&s| s & x != 0) {
            out.push(x);
        }
        if x == mask::full(n) {
            break;
        }
    }
    Ok(out)
}

/// Optimal tour length for a complete weighted graph (`weights[u][v]`), by
/// the Bellman–Held–Karp subset dynamic program.
pub fn held_karp_tsp(weights: &[Vec<u64>], budget: &OracleBudget) -> Result<u64> {
    let n = weights.len();
    if weights.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("weight matrix must be square".into()));
    }
    if n <= 1 {
        return Ok(0);
    }
    if n > 24 {
        return Err(Error::BudgetExceeded("held-karp: n > 24".into()));
    }
    budget.admit("held-karp", pow(2, n).map(|s| s * (n * n) as u128))?;
    let m = n - 1;
    let full = 1usize << m;
    let mut dp = vec![u64::MAX; full * m];
    for v in 0..m {
        dp[(1 << v) * m + v] = weights[0][v + 1];
    }
    for set in 1..full {
        for last in 0..m {
            let cur = dp[set * m + last];
            if cur == u64::MAX || set >> last & 1 == 0 {
                continue;
            }
            for nxt in 0..m {
                if set >> nxt & 1 == 1 {
                    continue;
                }
                let ns = set | 1 << nxt;
                let cand = cur.saturating_add(weights[last + 1][nxt + 1]);
                if cand < dp[ns * m + nxt] {
                    dp[ns * m + nxt] = cand;
                }
            }
        }
    }
    Ok((0..m)
        .map(|v| dp[(full - 1) * m + v].saturating_add(weights[v + 1][0]))
        .min()
        .unwrap())
}
