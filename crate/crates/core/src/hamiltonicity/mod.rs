//! Hamiltonicity through determinants: Tutte-matrix matching tests, cut
//! sums, the narrow cut factorization, and directed cycle counting with
//! Laplacians.

mod laplacian;
mod matchings;
mod narrow;
mod tutte;

pub use narrow::VERIFY_MAX_T;

pub use laplacian::{
    count_ham_cycles_mod_p, ham_cycles_through_arc_exact, in_incidence, laplacian, out_branching_count,
    out_incidence, ModPConfig, ModPOutcome, EXACT_MAX_N, MOD_P_MAX_N,
};
pub use matchings::{
    all_cuts, find_narrow_cut_family, known_narrow_cut_family, perfect_matchings, splits,
    verify_factorization_char2, verify_narrow_cut_factorization, FactorizationReport, H2Convention,
    MatchingsConnectivityData, Matching, MAX_T,
};
pub use narrow::{narrow_cut_hamiltonicity, NarrowCutFamily};
pub use tutte::{perfect_matching_test, undirected_ham_2n, HamOutcome, PitConfig, TutteMatrix};
