//! Exact exponential-time algorithms for NP-hard problems.
//!
//! Every solver comes with a brute-force reference in [`oracles`] and
//! reports named operation [`Counters`] so that the exponential bases
//! claimed for each algorithm can be observed directly.
//!
//! Conventions shared by all modules:
//! - Universe elements, vertices and variables are 1-based in every file
//!   format and 0-based everywhere in memory. Element `i` (external) is bit
//!   `i - 1` of a [`SubsetMask`].
//! - Randomized operations take an explicit [`Seed`]; the same seed and the
//!   same input always produce the same output.

pub mod algebra;
pub mod coloring;
pub mod counters;
pub mod covering;
pub mod error;
pub mod hamiltonicity;
pub mod instances;
pub mod mask;
pub mod oracles;
pub mod rng;
pub mod satkit;
pub mod sparsifier;
pub mod subsetsum;
pub mod sweep;

pub use counters::Counters;
pub use error::{Error, Result};
pub use instances::{CnfFormula, Lit, Multigraph, SetSystem, WeightedInstance};
pub use mask::SubsetMask;
pub use rng::Seed;
