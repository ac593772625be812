//! k-CNF-SAT: Monien–Speckenmeyer branching, Schöning's random walk with
//! local search, and the random-restriction algorithm built on canonical
//! decision trees.

mod cdt;
mod local;
mod ms;
mod restriction;
mod switch;

pub use cdt::{build_canonical_decision_tree, CanonicalDecisionTree, CdtNode};
pub use local::{local_search, schoening, schoening_parameters};
pub use ms::{fibonacci_step_bound, monien_speckenmeyer};
pub use restriction::{apply_restriction, Restriction};
pub use switch::{cdt_size_diagnostic, switch_sat, SwitchConfig};

use crate::Counters;

/// Result of a SAT solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatOutcome {
    pub satisfiable: bool,
    /// A satisfying assignment, when the solver produces one.
    pub witness: Option<Vec<bool>>,
    pub counters: Counters,
}
