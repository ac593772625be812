use super::{cross_middle_layer, CoverDecision, MembershipOracle};
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result};

/// Largest number of containers accepted (the loop runs over `2^k` subsets).
pub const MAX_CONTAINERS: usize = 20;

/// Set Cover with `k = containers.len()` sets where the promised solution
/// has `S_i ⊆ C_i`. For each `L ⊆ [k]` with `|C_L| <= (1 - eps_prime) n`,
/// runs the middle-layer crossing with `F` = subsets of `C_L` of size at
/// least `⌈n/2⌉`.
///
/// Counters: `iterations`, `qualifying`, `crossings`, `masks_touched`,
/// `accepted_at` (`L` as a bitmask plus one).
pub fn set_cover_with_containers<O: MembershipOracle + ?Sized>(
    oracle: &O,
    n: usize,
    containers: &[SubsetMask],
    eps_prime: f64,
) -> Result<CoverDecision> {
    let k = containers.len();
    if k > MAX_CONTAINERS {
        return Err(Error::BudgetExceeded(format!("{k} containers exceed the limit {MAX_CONTAINERS}")));
    }
    if !(0.0..=1.0).contains(&eps_prime) {
        return Err(Error::InvalidParameters(format!("eps_prime {eps_prime} outside [0, 1]")));
    }
    let u = mask::full(n);
    if containers.iter().any(|&c| c & !u != 0) {
        return Err(Error::Dimension("container outside the universe".into()));
    }
    let mut counters = Counters::new();
    let half = n.div_ceil(2);
    let limit = (1.0 - eps_prime) * n as f64 + 1e-9;
    for l in 0..1u64 << k {
        counters.incr("iterations");
        let c_l = mask::elements(l).fold(0, |acc, i| acc | containers[i]);
        if mask::size(c_l) as f64 > limit {
            continue;
        }
        counters.incr("qualifying");
        let family: Vec<SubsetMask> = mask::subsets(c_l).filter(|&x| mask::size(x) >= half).collect();
        if family.is_empty() {
            continue;
        }
        counters.incr("crossings");
        let out = cross_middle_layer(oracle, n, &family, k)?;
        counters.add("masks_touched", out.counters.get("masks_touched"));
        if out.decision {
            counters.set("accepted_at", l + 1);
            return Ok(CoverDecision::new(true, counters));
        }
    }
    Ok(CoverDecision::new(false, counters))
}
