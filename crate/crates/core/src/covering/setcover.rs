use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::lattice::{transform_on_family, TransformKind};
use crate::algebra::{Integers, Ring, I128};
use crate::instances::SetSystem;
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result};

/// Largest universe for which dense `2^n` tables are allocated.
pub const MAX_DENSE_N: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverOutcome {
    pub decision: bool,
    /// Number of ordered `k`-tuples of sets with union `U`.
    pub count: BigInt,
    pub counters: Counters,
}

/// Whether `|values| * 2^n`-sized alternating sums of `k`-th powers of
/// values up to `max` fit in `i128`.
pub(crate) fn fits_i128(max: u128, k: usize, n: usize) -> bool {
    let bits = 128 - max.leading_zeros() as usize;
    bits.saturating_mul(k).saturating_add(n) < 125
}

/// Runs zeta, `k`-th power and Möbius over `family` (closed upward or
/// downward, or all of `0..2^n` in order) and returns the final values.
pub(crate) fn power_transform(
    n: usize,
    family: &[SubsetMask],
    initial: &[u128],
    k: usize,
    counters: &mut Counters,
) -> Vec<BigInt> {
    let max_z: u128 = initial.iter().sum();
    if fits_i128(max_z, k, n) {
        let mut v: Vec<i128> = initial.iter().map(|&x| x as i128).collect();
        transform(&I128, TransformKind::Zeta, n, family, &mut v, counters);
        for x in v.iter_mut() {
            *x = x.pow(k as u32);
        }
        transform(&I128, TransformKind::Moebius, n, family, &mut v, counters);
        v.into_iter().map(BigInt::from).collect()
    } else {
        let mut v: Vec<BigInt> = initial.iter().map(|&x| BigInt::from(x)).collect();
        transform(&Integers, TransformKind::Zeta, n, family, &mut v, counters);
        for x in v.iter_mut() {
            *x = num_traits::pow(x.clone(), k);
        }
        transform(&Integers, TransformKind::Moebius, n, family, &mut v, counters);
        v
    }
}

fn dense_pass<E, F: Fn(&E, &E) -> E>(n: usize, v: &mut [E], op: F, counters: &mut Counters) {
    for b in 0..n {
        let bit = 1usize << b;
        for m in 0..v.len() {
            if m & bit != 0 {
                v[m] = op(&v[m], &v[m ^ bit]);
            }
        }
        counters.incr("passes");
    }
}

pub(crate) fn transform<R: Ring>(ring: &R, kind: TransformKind, n: usize, family: &[SubsetMask], v: &mut [R::Elem], c: &mut Counters) {
    if family.len() == 1usize << n {
        match kind {
            TransformKind::Zeta => dense_pass(n, v, |a, b| ring.add(a, b), c),
            TransformKind::Moebius => dense_pass(n, v, |a, b| ring.sub(a, b), c),
        }
    } else {
        transform_on_family(ring, kind, n, family, v, c);
    }
}

fn indicator(s: &SetSystem) -> HashMap<SubsetMask, u128> {
    let mut v = HashMap::new();
    for (m, mult) in s.weighted_sets() {
        *v.entry(m).or_insert(0u128) += mult as u128;
    }
    v
}

/// Set Cover by inclusion–exclusion over all `2^n` subsets: zeta transform
/// of the indicator vector, pointwise `k`-th power, Möbius transform, and
/// read the entry at `U`.
///
/// Counters: `passes` (`2n`) and `masks_touched` (`2^n` per pass).
pub fn set_cover_2n(s: &SetSystem, k: usize) -> Result<SetCoverOutcome> {
    let n = s.n();
    if n > MAX_DENSE_N {
        return Err(Error::BudgetExceeded(format!("2^{n} table exceeds the dense limit 2^{MAX_DENSE_N}")));
    }
    let all: Vec<SubsetMask> = (0..1u64 << n).collect();
    let ind = indicator(s);
    let initial: Vec<u128> = all.iter().map(|m| ind.get(m).copied().unwrap_or(0)).collect();
    let mut counters = Counters::new();
    let out = power_transform(n, &all, &initial, k, &mut counters);
    counters.set("masks_touched", counters.get("passes") * (1u64 << n));
    let count = out[mask::full(n) as usize].clone();
    Ok(finish(count, counters))
}

fn finish(count: BigInt, counters: Counters) -> SetCoverOutcome {
    debug_assert!(!count.is_negative());
    SetCoverOutcome {
        decision: count > BigInt::zero(),
        count,
        counters,
    }
}

/// Set Cover restricted to the up-closure `↑S`; both transforms are
/// lower-triangular, so entries outside `↑S` stay zero.
///
/// Counters: `closure_size` (`|↑S|`), `passes`, `masks_touched`
/// (`|↑S|` per pass).
pub fn set_cover_trimmed(s: &SetSystem, k: usize) -> Result<SetCoverOutcome> {
    let n = s.n();
    let mut counters = Counters::new();
    if k == 0 {
        let c = BigInt::from(u8::from(n == 0));
        return Ok(finish(c, counters));
    }
    let ind = indicator(s);
    let support: Vec<SubsetMask> = ind.iter().filter(|(_, &c)| c > 0).map(|(&m, _)| m).collect();
    let closure = mask::up_closure(&support, n);
    counters.set("closure_size", closure.len() as u64);
    let initial: Vec<u128> = closure.iter().map(|m| ind.get(m).copied().unwrap_or(0)).collect();
    let out = power_transform(n, &closure, &initial, k, &mut counters);
    counters.set("masks_touched", counters.get("passes") * closure.len() as u64);
    let values: BTreeMap<SubsetMask, BigInt> = closure.into_iter().zip(out).collect();
    let count = values.get(&mask::full(n)).cloned().unwrap_or_default();
    Ok(finish(count, counters))
}

impl SetCoverOutcome {
    pub fn count_u128(&self) -> Option<u128> {
        self.count.to_u128()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, lists: &[&[usize]]) -> SetSystem {
        SetSystem::from_lists(n, lists).unwrap()
    }

    #[test]
    fn examples() {
        let s = sys(2, &[&[1], &[2]]);
        assert_eq!(set_cover_2n(&s, 2).unwrap().count, BigInt::from(2));
        assert_eq!(set_cover_2n(&sys(2, &[&[1, 2]]), 1).unwrap().count, BigInt::from(1));
        let r = set_cover_2n(&sys(2, &[&[1]]), 3).unwrap();
        assert!(!r.decision);
        assert_eq!(r.counters.get("passes"), 4);
        assert_eq!(r.counters.get("masks_touched"), 16);
    }

    #[test]
    fn trimmed_examples() {
        let full = sys(3, &[&[1, 2, 3]]);
        let r = set_cover_trimmed(&full, 1).unwrap();
        assert!(r.decision);
        assert_eq!(r.counters.get("closure_size"), 1);
        let s = sys(3, &[&[1], &[2, 3], &[1, 2]]);
        for k in 0..4 {
            assert_eq!(set_cover_trimmed(&s, k).unwrap().count, set_cover_2n(&s, k).unwrap().count);
        }
    }

    #[test]
    fn multiplicity_counts() {
        let s = SetSystem::with_multiplicity(2, vec![0b01, 0b10], vec![2, 3]).unwrap();
        assert_eq!(set_cover_2n(&s, 2).unwrap().count, BigInt::from(12));
        assert_eq!(set_cover_trimmed(&s, 2).unwrap().count, BigInt::from(12));
    }

    #[test]
    fn bigint_path() {
        assert!(!fits_i128(1 << 20, 6, 10));
        let s = sys(3, &[&[1], &[2], &[3], &[1, 2], &[2, 3]]);
        let k = 40;
        let dense = set_cover_2n(&s, k).unwrap();
        assert_eq!(dense.count, set_cover_trimmed(&s, k).unwrap().count);
        let five = BigInt::from(5);
        let three = BigInt::from(3);
        let two = BigInt::from(2);
        let one = BigInt::from(1);
        let p = |b: &BigInt| num_traits::pow(b.clone(), k);
        // inclusion–exclusion over the complement of the union by hand
        let expect = p(&five) - (p(&three) + p(&two) + p(&three)) + (p(&one) + p(&one) + p(&one)) - p(&BigInt::zero());
        assert_eq!(dense.count, expect);
    }
}
