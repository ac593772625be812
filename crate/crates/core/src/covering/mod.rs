//! Set Cover and Bin Packing over the subset lattice.

mod binpack;
mod containers;
mod largek;
mod middle;
mod setcover;

pub use binpack::{
    bin_packing_distinct_sums_dp, bin_packing_tight, crossing_family, subset_sum_profile, SumProfile, DEFAULT_DP_BUDGET,
};
pub use containers::{set_cover_with_containers, MAX_CONTAINERS};
pub use largek::{set_cover_large_k, LargeKConfig};
pub use middle::{cover_within_i_sets, cross_middle_layer, CrossOutcome};
pub use setcover::{set_cover_2n, set_cover_trimmed, SetCoverOutcome, MAX_DENSE_N};

use crate::mask::SubsetMask;
use crate::Counters;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDecision {
    pub decision: bool,
    pub counters: Counters,
}

impl CoverDecision {
    pub(crate) fn new(decision: bool, counters: Counters) -> Self {
        Self { decision, counters }
    }
}

/// A membership test for a set family, `A_o` in the analysis.
pub trait MembershipOracle {
    fn contains(&self, set: SubsetMask) -> bool;
}

impl<F: Fn(SubsetMask) -> bool> MembershipOracle for F {
    fn contains(&self, set: SubsetMask) -> bool {
        self(set)
    }
}

/// Membership in the down-closure of an explicit family.
#[derive(Debug, Clone)]
pub struct DownClosureOracle<'a>(pub &'a [SubsetMask]);

impl MembershipOracle for DownClosureOracle<'_> {
    fn contains(&self, set: SubsetMask) -> bool {
        self.0.iter().any(|&s| set & !s == 0)
    }
}
