//! Subset Sum: meet-in-the-middle, the representation method with lists
//! restricted by cardinality and residue, and instance diagnostics.

use std::collections::HashMap;

use rand::Rng as _;

use crate::algebra::{next_prime, sample_prime};
use crate::instances::WeightedInstance;
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result, Seed};

/// Largest `n` for meet-in-the-middle.
pub const MITM_MAX_N: usize = 44;
/// Largest `n` for the exact diagnostics maps.
pub const DIAGNOSTICS_MAX_N: usize = 24;
/// Largest `n` for the representation method.
pub const REP_MAX_N: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSumOutcome {
    pub witness: Option<SubsetMask>,
    pub counters: Counters,
}

fn checked_target(inst: &WeightedInstance) -> Result<u128> {
    inst.total()?;
    inst.target()
}

/// All subset sums of `items` (global indices), as `(sum, mask)`.
fn subset_sums(w: &[u128], items: &[usize]) -> Vec<(u128, SubsetMask)> {
    let mut out = vec![(0u128, 0u64); 1 << items.len()];
    for m in 1..out.len() {
        let low = m.trailing_zeros() as usize;
        let (s, x) = out[m & (m - 1)];
        out[m] = (s + w[items[low]], x | 1 << items[low]);
    }
    out
}

/// Horowitz–Sahni: the left list is `2^L` for the first `⌈n/2⌉` items, the
/// right list `2^R` is sorted by sum and searched for `t - w(X)`.
///
/// Counters: `list_l`, `list_r`.
pub fn meet_in_middle(inst: &WeightedInstance) -> Result<SubsetSumOutcome> {
    let t = checked_target(inst)?;
    let n = inst.n();
    if n > MITM_MAX_N {
        return Err(Error::BudgetExceeded(format!("n = {n} exceeds {MITM_MAX_N}")));
    }
    let split = n.div_ceil(2);
    let left: Vec<usize> = (0..split).collect();
    let right: Vec<usize> = (split..n).collect();
    let mut rl = subset_sums(&inst.weights, &right);
    rl.sort_unstable();
    let mut counters = Counters::new();
    counters.set("list_l", 1 << left.len());
    counters.set("list_r", rl.len() as u64);
    for (s, x) in subset_sums(&inst.weights, &left) {
        let Some(need) = t.checked_sub(s) else { continue };
        let i = rl.partition_point(|&(v, _)| v < need);
        if i < rl.len() && rl[i].0 == need {
            return Ok(SubsetSumOutcome {
                witness: Some(x | rl[i].1),
                counters,
            });
        }
    }
    Ok(SubsetSumOutcome {
        witness: None,
        counters,
    })
}

/// Masks of a fixed cardinality with a fixed sum residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueListSpec {
    pub p: u64,
    pub residue: u64,
    pub cardinality: usize,
}

/// All masks with `|X| = cardinality` and `w(X) ≡ residue (mod p)`, sorted
/// by true sum then mask. A backward table over layers `(i, j, k)` marks
/// the states that reach `(n, residue, cardinality)`; a depth-first walk
/// through marked states lists the paths.
///
/// Counters: `dp_states` (`(n+1) p (cardinality+1)`), `dfs_nodes`.
pub fn build_residue_list(w: &[u128], spec: ResidueListSpec, counters: &mut Counters) -> Result<Vec<(u128, SubsetMask)>> {
    let n = w.len();
    let ResidueListSpec { p, residue, cardinality } = spec;
    if p == 0 || residue >= p {
        return Err(Error::InvalidParameters(format!("residue {residue} is not in Z_{p}")));
    }
    if cardinality > n || n > mask::MAX_UNIVERSE {
        return Err(Error::InvalidParameters(format!("cardinality {cardinality} exceeds n = {n}")));
    }
    let p_us = usize::try_from(p).map_err(|_| Error::BudgetExceeded("p too large".into()))?;
    let kk = cardinality + 1;
    let states = (n + 1)
        .checked_mul(p_us)
        .and_then(|x| x.checked_mul(kk))
        .filter(|&x| x <= 1 << 31)
        .ok_or_else(|| Error::BudgetExceeded(format!("(n+1) p (k+1) table for p = {p}")))?;
    counters.add("dp_states", states as u64);
    let wr: Vec<usize> = w.iter().map(|&x| (x % p as u128) as usize).collect();
    let idx = |i: usize, j: usize, k: usize| (i * p_us + j) * kk + k;
    let mut good = vec![false; states];
    good[idx(n, residue as usize, cardinality)] = true;
    for i in (0..n).rev() {
        for j in 0..p_us {
            for k in 0..kk {
                let skip = good[idx(i + 1, j, k)];
                let take = k < cardinality && good[idx(i + 1, (j + wr[i]) % p_us, k + 1)];
                good[idx(i, j, k)] = skip || take;
            }
        }
    }
    let mut out = Vec::new();
    if good[idx(0, 0, 0)] {
        let mut stack = vec![(0usize, 0usize, 0usize, 0u64, 0u128)];
        while let Some((i, j, k, m, s)) = stack.pop() {
            counters.incr("dfs_nodes");
            if i == n {
                out.push((s, m));
                continue;
            }
            if good[idx(i + 1, j, k)] {
                stack.push((i + 1, j, k, m, s));
            }
            if k < cardinality && good[idx(i + 1, (j + wr[i]) % p_us, k + 1)] {
                let s2 = s
                    .checked_add(w[i])
                    .ok_or_else(|| Error::InvalidParameters("weight sum overflows u128".into()))?;
                stack.push((i + 1, (j + wr[i]) % p_us, k + 1, m | 1 << i, s2));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The prime range `[⌈2^(0.45n)⌉, max(lo + 1, ⌊2^(0.45n+1)⌋)]`, with `lo`
/// raised to 2.
pub fn prime_range(n: usize) -> (u64, u64) {
    let e = 0.45 * n as f64;
    let lo = (e.exp2().ceil() as u64).max(2);
    let hi = ((e + 1.0).exp2().floor() as u64).max(lo + 1);
    (lo, hi)
}

/// The representation method. Each repetition samples a prime `p` from
/// [`prime_range`] (the smallest prime `>= lo` if the range has none) and
/// `t_L ∈ Z_p`, builds `L` and `R` over `C([n], ⌈n/4⌉)` with residues `t_L`
/// and `t - t_L`, and scans `L` against `R` sorted by sum for disjoint
/// pairs. One-sided: every witness is checked before it is returned.
///
/// Counters: `list_l`, `list_r`, `collisions`, `repetitions_run`, `prime`
/// (of the last repetition).
pub fn representation_method(inst: &WeightedInstance, seed: Seed, repetitions: usize) -> Result<SubsetSumOutcome> {
    let t = checked_target(inst)?;
    let n = inst.n();
    if n > REP_MAX_N {
        return Err(Error::BudgetExceeded(format!("n = {n} exceeds {REP_MAX_N}")));
    }
    let card = n.div_ceil(4);
    let (lo, hi) = prime_range(n);
    let mut counters = Counters::new();
    for r in 0..repetitions {
        counters.incr("repetitions_run");
        let rs = seed.derive(r as u64);
        let p = match sample_prime(lo, hi, rs) {
            Ok(p) => p,
            Err(Error::NoPrime { .. }) => next_prime(lo)?,
            Err(e) => return Err(e),
        };
        counters.set("prime", p);
        let t_l = rs.derive(1).rng().random_range(0..p);
        let t_r = ((t % p as u128) as u64 + p - t_l) % p;
        let l = build_residue_list(&inst.weights, ResidueListSpec { p, residue: t_l, cardinality: card }, &mut counters)?;
        let rl = build_residue_list(&inst.weights, ResidueListSpec { p, residue: t_r, cardinality: card }, &mut counters)?;
        counters.add("list_l", l.len() as u64);
        counters.add("list_r", rl.len() as u64);
        for &(s, x) in &l {
            let Some(need) = t.checked_sub(s) else { continue };
            let start = rl.partition_point(|&(v, _)| v < need);
            for &(v, y) in rl[start..].iter().take_while(|&&(v, _)| v == need) {
                counters.incr("collisions");
                debug_assert_eq!(v, need);
                if x & y == 0 {
                    let sol = x | y;
                    if inst.weight_of(sol) != t {
                        return Err(Error::Internal("representation witness fails the weight check".into()));
                    }
                    return Ok(SubsetSumOutcome {
                        witness: Some(sol),
                        counters,
                    });
                }
            }
        }
    }
    Ok(SubsetSumOutcome {
        witness: None,
        counters,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diagnostics {
    /// Pairs `(X, Y)` of `⌈n/4⌉`-subsets with `w(X) + w(Y) = t`.
    pub pseudo_solutions: u128,
    pub distinct_subset_sums: u64,
    /// `β(w)`: the largest number of subsets sharing a sum.
    pub max_frequency: u64,
}

pub fn diagnostics(inst: &WeightedInstance) -> Result<Diagnostics> {
    let t = checked_target(inst)?;
    let n = inst.n();
    if n > DIAGNOSTICS_MAX_N {
        return Err(Error::BudgetExceeded(format!("n = {n} exceeds {DIAGNOSTICS_MAX_N}")));
    }
    let mut by_sum: HashMap<u128, u64> = HashMap::new();
    for x in mask::combinations(n, n.div_ceil(4)) {
        *by_sum.entry(inst.weight_of(x)).or_insert(0) += 1;
    }
    let pseudo_solutions = by_sum
        .iter()
        .filter_map(|(&s, &c)| t.checked_sub(s).and_then(|r| by_sum.get(&r)).map(|&d| c as u128 * d as u128))
        .sum();
    let all: Vec<usize> = (0..n).collect();
    let mut sums: Vec<u128> = subset_sums(&inst.weights, &all).into_iter().map(|(s, _)| s).collect();
    sums.sort_unstable();
    let mut distinct = 0u64;
    let mut best = 0u64;
    let mut i = 0;
    while i < sums.len() {
        let j = i + sums[i..].partition_point(|&v| v == sums[i]);
        distinct += 1;
        best = best.max((j - i) as u64);
        i = j;
    }
    Ok(Diagnostics {
        pseudo_solutions,
        distinct_subset_sums: distinct,
        max_frequency: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ss(w: &[u128], t: u128) -> WeightedInstance {
        WeightedInstance::subset_sum(w.to_vec(), t)
    }

    #[test]
    fn mitm_examples() {
        let out = meet_in_middle(&ss(&[1, 2, 4], 5)).unwrap();
        assert_eq!(out.witness, Some(0b101));
        assert_eq!(out.counters.get("list_l"), 4);
        assert_eq!(out.counters.get("list_r"), 2);
        assert_eq!(meet_in_middle(&ss(&[3, 5], 0)).unwrap().witness, Some(0));
        assert_eq!(meet_in_middle(&ss(&[3, 5], 4)).unwrap().witness, None);
    }

    #[test]
    fn residue_examples() {
        let mut c = Counters::new();
        let spec = ResidueListSpec {
            p: 2,
            residue: 0,
            cardinality: 1,
        };
        assert_eq!(build_residue_list(&[1, 2, 3], spec, &mut c).unwrap(), vec![(2, 0b010)]);
        let zero = ResidueListSpec {
            p: 5,
            residue: 0,
            cardinality: 0,
        };
        assert_eq!(build_residue_list(&[1, 2, 3], zero, &mut c).unwrap(), vec![(0, 0)]);
        let bad = ResidueListSpec {
            p: 5,
            residue: 5,
            cardinality: 0,
        };
        assert!(build_residue_list(&[1], bad, &mut c).is_err());
    }

    #[test]
    fn rep_self_validates() {
        let inst = ss(&[1, 2, 3, 4, 5, 6, 7, 8], 10);
        for seed in 0..10 {
            if let Some(x) = representation_method(&inst, Seed(seed), 5).unwrap().witness {
                assert_eq!(inst.weight_of(x), 10);
            }
        }
        let none = ss(&[2, 4, 6, 8, 10, 12, 14, 16], 11);
        assert!(representation_method(&none, Seed(0), 10).unwrap().witness.is_none());
    }

    #[test]
    fn prime_ranges() {
        assert_eq!(prime_range(0), (2, 3));
        let (lo, hi) = prime_range(16);
        assert_eq!(lo, 148);
        assert_eq!(hi, 294);
    }

    #[test]
    fn extremal_diagnostics() {
        let zeros = diagnostics(&ss(&[0; 6], 0)).unwrap();
        assert_eq!(zeros.distinct_subset_sums, 1);
        assert_eq!(zeros.max_frequency, 64);
        let pow: Vec<u128> = (0..6).map(|i| 1u128 << i).collect();
        let b = diagnostics(&ss(&pow, 3)).unwrap();
        assert_eq!(b.distinct_subset_sums, 64);
        assert_eq!(b.max_frequency, 1);
        assert_eq!(diagnostics(&ss(&[1, 1, 2], 2)).unwrap().pseudo_solutions, 4);
    }
}
