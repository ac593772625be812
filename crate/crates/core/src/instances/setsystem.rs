use std::fmt::Write as _;

use super::{content_lines, parse_num};
use crate::mask::{self, SubsetMask};
use crate::{Error, Result};

/// A family of subsets of `{0, .., n-1}`, optionally with multiplicities.
///
/// In the text format a set is one line of 1-based elements, `{}` denotes the
/// empty set, and a trailing `@m` token gives a multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    n: usize,
    sets: Vec<SubsetMask>,
    multiplicity: Option<Vec<u64>>,
}

impl SetSystem {
    pub fn new(n: usize, sets: Vec<SubsetMask>) -> Result<Self> {
        if n > mask::MAX_UNIVERSE {
            return Err(Error::InvalidParameters(format!("universe of {n} > 64 elements")));
        }
        if let Some(s) = sets.iter().find(|&&s| !mask::is_subset(s, mask::full(n))) {
            return Err(Error::InvalidParameters(format!("set {s:#b} not inside universe of size {n}")));
        }
        Ok(SetSystem {
            n,
            sets,
            multiplicity: None,
        })
    }

    pub fn with_multiplicity(n: usize, sets: Vec<SubsetMask>, multiplicity: Vec<u64>) -> Result<Self> {
        if sets.len() != multiplicity.len() {
            return Err(Error::Dimension("one multiplicity per set".into()));
        }
        let mut s = Self::new(n, sets)?;
        s.multiplicity = Some(multiplicity);
        Ok(s)
    }

    /// From 1-based element lists.
    pub fn from_lists(n: usize, lists: &[&[usize]]) -> Result<Self> {
        let mut sets = Vec::with_capacity(lists.len());
        for l in lists {
            if let Some(&e) = l.iter().find(|&&e| e == 0 || e > n) {
                return Err(Error::InvalidParameters(format!("element {e} outside 1..{n}")));
            }
            sets.push(mask::from_elements(l.iter().map(|e| e - 1)));
        }
        Self::new(n, sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> SubsetMask {
        mask::full(self.n)
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn multiplicity(&self, i: usize) -> u64 {
        self.multiplicity.as_ref().map_or(1, |m| m[i])
    }

    pub fn has_multiplicity(&self) -> bool {
        self.multiplicity.is_some()
    }

    /// Largest set size.
    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(|&s| mask::size(s)).max().unwrap_or(0)
    }

    /// `(mask, multiplicity)` pairs with duplicates merged, in first-seen order.
    pub fn weighted_sets(&self) -> Vec<(SubsetMask, u64)> {
        let mut out: Vec<(SubsetMask, u64)> = Vec::new();
        let mut index: std::collections::HashMap<SubsetMask, usize> = std::collections::HashMap::new();
        for (i, &s) in self.sets.iter().enumerate() {
            let m = self.multiplicity(i);
            match index.get(&s) {
                Some(&j) => out[j].1 += m,
                None => {
                    index.insert(s, out.len());
                    out.push((s, m));
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let Some((hl, header)) = lines.next() else {
            return Err(Error::parse(1, "empty input"));
        };
        let n: usize = parse_num(header, hl, "universe size")?;
        if n > mask::MAX_UNIVERSE {
            return Err(Error::parse(hl, format!("universe of {n} > 64 elements")));
        }
        let mut sets = Vec::new();
        let mut mult = Vec::new();
        let mut any_mult = false;
        for (ln, line) in lines {
            let mut m: SubsetMask = 0;
            let mut mul = 1u64;
            for tok in line.split_whitespace() {
                if tok == "{}" {
                    continue;
                }
                if let Some(rest) = tok.strip_prefix('@') {
                    mul = parse_num(rest, ln, "multiplicity")?;
                    any_mult = true;
                    continue;
                }
                let e: usize = parse_num(tok, ln, "element")?;
                if e == 0 || e > n {
                    return Err(Error::parse(ln, format!("element {e} outside 1..{n}")));
                }
                m |= 1u64 << (e - 1);
            }
            sets.push(m);
            mult.push(mul);
        }
        let mut s = SetSystem::new(n, sets)?;
        if any_mult {
            s.multiplicity = Some(mult);
        }
        Ok(s)
    }

    pub fn render(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (i, &set) in self.sets.iter().enumerate() {
            let elems: Vec<String> = mask::elements(set).map(|e| (e + 1).to_string()).collect();
            if elems.is_empty() {
                s.push_str("{}");
            } else {
                s.push_str(&elems.join(" "));
            }
            if self.multiplicity.is_some() {
                let _ = write!(s, " @{}", self.multiplicity(i));
            }
            s.push('\n');
        }
        s
    }
}
