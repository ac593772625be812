//! Instance types, text formats and seeded generators.
//!
//! Every format is UTF-8, line based, and ignores blank lines and lines
//! starting with `#`.

mod cnf;
pub mod generate;
mod graph;
mod setsystem;
mod weighted;

pub use cnf::{CnfFormula, Lit};
pub use graph::Multigraph;
pub use setsystem::SetSystem;
pub use weighted::WeightedInstance;

/// Content lines paired with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> crate::Result<T> {
    tok.parse()
        .map_err(|_| crate::Error::parse(line, format!("invalid {what} '{tok}'")))
}
