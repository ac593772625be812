use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::setcover::{fits_i128, transform};
use crate::algebra::{Integers, TransformKind, I128};
use super::MembershipOracle;
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result};

/// For every `X` in a down-closed `family` and every `i` in `0..=k`, whether
/// `X` is covered by `i` members of the down-closed family accepted by
/// `oracle`. Rows follow the order of `family`.
///
/// Counters: `oracle_calls` and `masks_touched` (both `|family|`), `passes`.
pub fn cover_within_i_sets<O: MembershipOracle + ?Sized>(
    oracle: &O,
    n: usize,
    family: &[SubsetMask],
    k: usize,
    counters: &mut Counters,
) -> Result<Vec<Vec<bool>>> {
    let members: std::collections::HashSet<SubsetMask> = family.iter().copied().collect();
    if let Some(&bad) = family.iter().find(|&&x| mask::elements(x).any(|e| !members.contains(&(x & !(1u64 << e))))) {
        return Err(Error::Precondition(format!("family is not down-closed at {bad:#b}")));
    }
    let initial: Vec<u128> = family.iter().map(|&x| u128::from(oracle.contains(x))).collect();
    counters.add("oracle_calls", family.len() as u64);
    counters.add("masks_touched", family.len() as u64);
    let mut table = vec![vec![false; k + 1]; family.len()];
    for (row, &x) in table.iter_mut().zip(family) {
        row[0] = x == 0;
    }
    let mut z: Vec<i128> = initial.iter().map(|&x| x as i128).collect();
    transform(&I128, TransformKind::Zeta, n, family, &mut z, counters);
    let max_z = z.iter().copied().max().unwrap_or(0) as u128;
    for i in 1..=k {
        let mut scratch = Counters::new();
        let positive: Vec<bool> = if fits_i128(max_z, i, n) {
            let mut v: Vec<i128> = z.iter().map(|x| x.pow(i as u32)).collect();
            transform(&I128, TransformKind::Moebius, n, family, &mut v, &mut scratch);
            v.into_iter().map(|x| x > 0).collect()
        } else {
            let mut v: Vec<BigInt> = z.iter().map(|&x| num_traits::pow(BigInt::from(x), i)).collect();
            transform(&Integers, TransformKind::Moebius, n, family, &mut v, &mut scratch);
            v.into_iter().map(|x| x > BigInt::zero()).collect()
        };
        counters.add("passes", scratch.get("passes"));
        for (row, p) in table.iter_mut().zip(positive) {
            row[i] = p;
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossOutcome {
    pub decision: bool,
    /// The crossing set `F` and the number of sets before the crossing.
    pub witness: Option<(SubsetMask, usize)>,
    pub counters: Counters,
}

/// Decides whether `k` members of the down-closed family given by `oracle`
/// cover `U`, for solutions whose prefix union crosses the middle layer at
/// some member of `family`. Each `F` is split as `a` sets covering `F` and
/// `k - a` sets covering `U \ F`, with `a` in `0..=k`.
///
/// Every member of `family` must have at least `⌈n/2⌉` elements.
/// Counters: `down_closure` (`|↓F| + |↓F'|`), `oracle_calls`.
pub fn cross_middle_layer<O: MembershipOracle + ?Sized>(
    oracle: &O,
    n: usize,
    family: &[SubsetMask],
    k: usize,
) -> Result<CrossOutcome> {
    let half = n.div_ceil(2);
    let u = mask::full(n);
    if let Some(&bad) = family.iter().find(|&&f| mask::size(f) < half || f & !u != 0) {
        return Err(Error::Precondition(format!(
            "crossing family member {bad:#b} is not a subset of size at least {half}"
        )));
    }
    let complements: Vec<SubsetMask> = family.iter().map(|&f| u & !f).collect();
    let below = mask::down_closure(family, n);
    let below_c = mask::down_closure(&complements, n);
    let mut counters = Counters::new();
    counters.set("down_closure", (below.len() + below_c.len()) as u64);
    let t1 = cover_within_i_sets(oracle, n, &below, k, &mut counters)?;
    let t2 = cover_within_i_sets(oracle, n, &below_c, k, &mut counters)?;
    let idx1: HashMap<SubsetMask, usize> = below.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let idx2: HashMap<SubsetMask, usize> = below_c.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut witness = None;
    'outer: for &f in family {
        let r1 = &t1[idx1[&f]];
        let r2 = &t2[idx2[&(u & !f)]];
        for a in 0..=k {
            if r1[a] && r2[k - a] {
                witness = Some((f, a));
                break 'outer;
            }
        }
    }
    Ok(CrossOutcome {
        decision: witness.is_some(),
        witness,
        counters,
    })
}
