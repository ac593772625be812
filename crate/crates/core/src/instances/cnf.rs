use std::fmt::Write as _;

use super::{content_lines, parse_num};
use crate::{Error, Result};

/// A literal: variable index (0-based) and polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, negated: true }
    }

    /// From a DIMACS literal such as `-3`.
    pub fn from_dimacs(v: i64) -> Self {
        debug_assert!(v != 0);
        Lit {
            var: v.unsigned_abs() as usize - 1,
            negated: v < 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn negate(self) -> Self {
        Lit {
            var: self.var,
            negated: !self.negated,
        }
    }

    /// The value the literal takes under an assignment of its variable.
    #[inline]
    pub fn eval(self, value: bool) -> bool {
        value != self.negated
    }

    /// The value of the variable that makes this literal true.
    #[inline]
    pub fn satisfying_value(self) -> bool {
        !self.negated
    }
}

/// A CNF formula. Clause order and literal order are significant and kept
/// exactly as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            check_clause(num_vars, c).map_err(|m| Error::InvalidParameters(format!("clause {}: {m}", i + 1)))?;
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds a formula from DIMACS-style signed literals.
    pub fn from_dimacs(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        if clauses.iter().flat_map(|c| c.iter()).any(|&l| l == 0) {
            return Err(Error::InvalidParameters("literal 0".into()));
        }
        Self::new(
            num_vars,
            clauses
                .iter()
                .map(|c| c.iter().map(|&l| Lit::from_dimacs(l)).collect())
                .collect(),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Largest clause width (0 for the empty formula).
    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Vec::is_empty)
    }

    /// Evaluates under a total assignment, `assignment[v]` being variable `v`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(assignment[l.var])))
    }

    /// Index of the first clause falsified by a total assignment.
    pub fn first_falsified(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.eval(assignment[l.var])))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut cur: Vec<Lit> = Vec::new();
        let mut cur_line = 0;
        let mut last_line = 0;
        for (ln, line) in content_lines(text) {
            last_line = ln;
            if line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(Error::parse(ln, "duplicate header"));
                }
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 4 || toks[0] != "p" || toks[1] != "cnf" {
                    return Err(Error::parse(ln, "malformed header, expected 'p cnf <vars> <clauses>'"));
                }
                let n = parse_num(toks[2], ln, "variable count")?;
                let m = parse_num(toks[3], ln, "clause count")?;
                header = Some((n, m, ln));
                continue;
            }
            let Some((n, _, _)) = header else {
                return Err(Error::parse(ln, "clause before 'p cnf' header"));
            };
            for tok in line.split_whitespace() {
                let v: i64 = parse_num(tok, ln, "literal")?;
                if v == 0 {
                    check_clause(n, &cur).map_err(|m| Error::parse(cur_line.max(1), m))?;
                    clauses.push(std::mem::take(&mut cur));
                    continue;
                }
                if cur.is_empty() {
                    cur_line = ln;
                }
                if v.unsigned_abs() as usize > n {
                    return Err(Error::parse(ln, format!("variable {} > numVars {n}", v.unsigned_abs())));
                }
                cur.push(Lit::from_dimacs(v));
            }
        }
        let Some((n, m, hl)) = header else {
            return Err(Error::parse(last_line.max(1), "missing 'p cnf' header"));
        };
        if !cur.is_empty() {
            return Err(Error::parse(last_line, "last clause not terminated by 0"));
        }
        if clauses.len() != m {
            return Err(Error::parse(hl, format!("header declares {m} clauses, found {}", clauses.len())));
        }
        Ok(CnfFormula { num_vars: n, clauses })
    }

    pub fn render(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(s, "{} ", l.to_dimacs());
            }
            s.push_str("0\n");
        }
        s
    }
}

fn check_clause(n: usize, c: &[Lit]) -> std::result::Result<(), String> {
    for (i, l) in c.iter().enumerate() {
        if l.var >= n {
            return Err(format!("variable {} > numVars {n}", l.var + 1));
        }
        if c[..i].iter().any(|o| o.var == l.var) {
            return Err(format!("variable {} occurs twice in a clause", l.var + 1));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let f = CnfFormula::parse("p cnf 1 1\n1 0").unwrap();
        assert_eq!(f.clauses(), &[vec![Lit::pos(0)]]);
        let f = CnfFormula::parse("p cnf 2 2\n1 2 0\n-1 2 0").unwrap();
        assert_eq!(f.clauses().iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(f.clauses()[1][0], Lit::neg(0));
        assert!(matches!(CnfFormula::parse("p cnf 1 1\n2 0"), Err(Error::Parse { line: 2, .. })));
        assert!(CnfFormula::parse("").is_err());
        assert!(CnfFormula::parse("p cnf 2\n1 0").is_err());
        assert!(CnfFormula::parse("p cnf 2 1\n1 -1 0").is_err());
    }

    #[test]
    fn clauses_may_span_lines_and_comments() {
        let f = CnfFormula::parse("c hi\np cnf 3 2\n1\n2 0 -3\n0\n").unwrap();
        assert_eq!(f.num_clauses(), 2);
        assert_eq!(f.clauses()[1], vec![Lit::neg(2)]);
        let g = CnfFormula::parse("p cnf 2 1\n0\n").unwrap();
        assert!(g.has_empty_clause());
    }

    #[test]
    fn round_trip() {
        let f = CnfFormula::from_dimacs(4, &[&[1, -2], &[3, 4, -1], &[]]).unwrap();
        assert_eq!(CnfFormula::parse(&f.render()).unwrap(), f);
    }
}
