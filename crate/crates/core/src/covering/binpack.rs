use std::collections::{HashMap, HashSet};

use super::{cross_middle_layer, CoverDecision, MAX_DENSE_N};
use crate::instances::WeightedInstance;
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result};

/// Default cap on the estimated number of load vectors in the DP.
pub const DEFAULT_DP_BUDGET: u64 = 1 << 24;

fn load_all(inst: &WeightedInstance) -> Result<(u128, usize)> {
    let (c, k) = inst.capacity_and_bins()?;
    if inst.n() > MAX_DENSE_N {
        return Err(Error::BudgetExceeded(format!("n = {} exceeds {MAX_DENSE_N}", inst.n())));
    }
    Ok((c, k))
}

/// Subset sums of every mask, indexed by mask.
fn all_sums(w: &[u128]) -> Result<Vec<u128>> {
    let n = w.len();
    let mut sums = vec![0u128; 1 << n];
    for m in 1..sums.len() {
        let low = m.trailing_zeros() as usize;
        sums[m] = sums[m & (m - 1)]
            .checked_add(w[low])
            .ok_or_else(|| Error::InvalidParameters("weight sum overflows u128".into()))?;
    }
    Ok(sums)
}

/// Sets of size at least `⌈n/2⌉` whose weight is a multiple of `c`, listed
/// by combining the two halves of `[n]` grouped by size and residue.
pub fn crossing_family(w: &[u128], c: u128) -> Result<Vec<SubsetMask>> {
    let n = w.len();
    let half = n.div_ceil(2);
    let split = n / 2;
    let key = |x: u128| if c == 0 { x } else { x % c };
    let left_w = &w[..split];
    let right_w = &w[split..];
    let left = all_sums(left_w)?;
    let right = all_sums(right_w)?;
    let mut by_key: HashMap<u128, Vec<SubsetMask>> = HashMap::new();
    for (m, &s) in right.iter().enumerate() {
        by_key.entry(key(s)).or_default().push(m as SubsetMask);
    }
    let mut out = Vec::new();
    for (l, &s) in left.iter().enumerate() {
        let need = if c == 0 {
            if s != 0 {
                continue;
            }
            0
        } else {
            (c - key(s)) % c
        };
        let Some(rs) = by_key.get(&need) else { continue };
        let l_size = mask::size(l as SubsetMask);
        for &r in rs {
            if l_size + mask::size(r) >= half {
                out.push(l as SubsetMask | r << split);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Tight Bin Packing (`w([n]) = k c`) through the middle-layer crossing.
/// The oracle accepts sets that extend to a bin of load exactly `c`; the
/// crossing family holds the sets of size at least `⌈n/2⌉` with weight in
/// `cℤ`, which includes the first prefix union of any solution that reaches
/// half the items.
///
/// Counters: `family_size`, `oracle_true`, plus the crossing counters.
pub fn bin_packing_tight(inst: &WeightedInstance) -> Result<CoverDecision> {
    let (c, k) = load_all(inst)?;
    let total = inst.total()?;
    if Some(total) != c.checked_mul(k as u128) {
        return Err(Error::Precondition(format!("instance is not tight: w([n]) = {total}, k * c = {k} * {c}")));
    }
    let n = inst.n();
    let sums = all_sums(&inst.weights)?;
    // superset-OR of the exact-load indicator
    let mut extends: Vec<bool> = sums.iter().map(|&s| s == c).collect();
    for b in 0..n {
        let bit = 1usize << b;
        for m in 0..extends.len() {
            if m & bit == 0 && extends[m | bit] {
                extends[m] = true;
            }
        }
    }
    let family = crossing_family(&inst.weights, c)?;
    let mut counters = Counters::new();
    counters.set("family_size", family.len() as u64);
    counters.set("oracle_true", extends.iter().filter(|&&b| b).count() as u64);
    let oracle = |x: SubsetMask| extends[x as usize];
    let out = cross_middle_layer(&oracle, n, &family, k)?;
    counters.merge(&out.counters);
    Ok(CoverDecision::new(out.decision, counters))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumProfile {
    /// Largest number of subsets sharing one sum.
    pub max_frequency: u64,
    /// Number of distinct subset sums.
    pub distinct_sums: u64,
}

pub fn subset_sum_profile(w: &[u128]) -> Result<SumProfile> {
    let mut freq: HashMap<u128, u64> = HashMap::from([(0, 1)]);
    for &x in w {
        let mut next = freq.clone();
        for (&s, &f) in &freq {
            let t = s
                .checked_add(x)
                .ok_or_else(|| Error::InvalidParameters("weight sum overflows u128".into()))?;
            *next.entry(t).or_insert(0) += f;
        }
        freq = next;
    }
    Ok(SumProfile {
        max_frequency: freq.values().copied().max().unwrap_or(0),
        distinct_sums: freq.len() as u64,
    })
}

/// Bin Packing by a table over sorted load vectors, one item at a time.
/// Errors when `|w(2^[n]) ∩ [0, c]|^k` exceeds `budget`.
///
/// Counters: `distinct_sums`, `estimated_states`, `peak_states`.
pub fn bin_packing_distinct_sums_dp(inst: &WeightedInstance, budget: u64) -> Result<CoverDecision> {
    let (c, k) = inst.capacity_and_bins()?;
    let mut sums: HashSet<u128> = HashSet::from([0]);
    for &x in &inst.weights {
        let add: Vec<u128> = sums.iter().filter_map(|&s| s.checked_add(x)).filter(|&s| s <= c).collect();
        sums.extend(add);
    }
    let distinct = sums.len() as u64;
    let estimate = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(distinct));
    let mut counters = Counters::new();
    counters.set("distinct_sums", distinct);
    match estimate {
        Some(e) if e <= budget => counters.set("estimated_states", e),
        _ => {
            return Err(Error::BudgetExceeded(format!("{distinct}^{k} load vectors exceed the budget {budget}")));
        }
    }
    if k == 0 {
        return Ok(CoverDecision::new(inst.n() == 0, counters));
    }
    let mut states: HashSet<Vec<u128>> = HashSet::from([vec![0; k]]);
    for &x in &inst.weights {
        let mut next = HashSet::new();
        for loads in &states {
            for i in 0..k {
                if i > 0 && loads[i] == loads[i - 1] {
                    continue;
                }
                if let Some(l) = loads[i].checked_add(x).filter(|&l| l <= c) {
                    let mut v = loads.clone();
                    v[i] = l;
                    v.sort_unstable();
                    next.insert(v);
                }
            }
        }
        states = next;
        counters.max("peak_states", states.len() as u64);
        if states.is_empty() {
            break;
        }
    }
    Ok(CoverDecision::new(!states.is_empty(), counters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(w: &[u128], c: u128, k: usize) -> WeightedInstance {
        WeightedInstance::bin_packing(w.to_vec(), c, k)
    }

    #[test]
    fn tight_examples() {
        assert!(bin_packing_tight(&bp(&[1, 1, 1, 1], 2, 2)).unwrap().decision);
        assert!(bin_packing_tight(&bp(&[3, 1, 1, 1], 3, 2)).unwrap().decision);
        assert!(!bin_packing_tight(&bp(&[2, 2, 2], 3, 2)).unwrap().decision);
        assert!(matches!(bin_packing_tight(&bp(&[1, 2], 2, 2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn dp_examples() {
        let b = DEFAULT_DP_BUDGET;
        assert!(bin_packing_distinct_sums_dp(&bp(&[1, 2, 3], 3, 2), b).unwrap().decision);
        assert!(!bin_packing_distinct_sums_dp(&bp(&[2, 2, 2], 3, 2), b).unwrap().decision);
        assert!(bin_packing_distinct_sums_dp(&bp(&[0, 0, 0], 0, 1), b).unwrap().decision);
        assert!(matches!(
            bin_packing_distinct_sums_dp(&bp(&[1, 2, 4, 8, 16], 31, 6), 1000),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn family_matches_filter() {
        let w = [3u128, 1, 4, 1, 5, 9, 2];
        let c = 5;
        let got = crossing_family(&w, c).unwrap();
        let want: Vec<SubsetMask> = (0..1u64 << w.len())
            .filter(|&m| {
                mask::size(m) >= 4 && mask::elements(m).map(|i| w[i]).sum::<u128>() % c == 0
            })
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn profile() {
        let p = subset_sum_profile(&[1, 1, 2]).unwrap();
        assert_eq!(p.distinct_sums, 5);
        assert_eq!(p.max_frequency, 2);
    }
}
