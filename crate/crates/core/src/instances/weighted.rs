use super::{content_lines, parse_num};
use crate::mask::{self, SubsetMask};
use crate::{Error, Result};

/// Weights with either a subset-sum target or a bin-packing capacity and
/// bin count.
///
/// Text format: header `n t` (subset sum) or `n c k` (bin packing), then the
/// `n` weights as decimal integers over any number of lines. Weights are
/// exact 128-bit values; every sum taken by the solvers is overflow-checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedInstance {
    pub weights: Vec<u128>,
    pub target: Option<u128>,
    pub capacity: Option<u128>,
    pub bins: Option<usize>,
}

impl WeightedInstance {
    pub fn subset_sum(weights: Vec<u128>, target: u128) -> Self {
        WeightedInstance {
            weights,
            target: Some(target),
            capacity: None,
            bins: None,
        }
    }

    pub fn bin_packing(weights: Vec<u128>, capacity: u128, bins: usize) -> Self {
        WeightedInstance {
            weights,
            target: None,
            capacity: Some(capacity),
            bins: Some(bins),
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn target(&self) -> Result<u128> {
        self.target
            .ok_or_else(|| Error::InvalidParameters("instance has no subset-sum target".into()))
    }

    pub fn capacity_and_bins(&self) -> Result<(u128, usize)> {
        match (self.capacity, self.bins) {
            (Some(c), Some(k)) => Ok((c, k)),
            _ => Err(Error::InvalidParameters("instance has no capacity/bin count".into())),
        }
    }

    /// Total weight, or an error on overflow.
    pub fn total(&self) -> Result<u128> {
        self.weights
            .iter()
            .try_fold(0u128, |a, &w| a.checked_add(w))
            .ok_or_else(|| Error::InvalidParameters("total weight overflows 128 bits".into()))
    }

    /// `w(X)`; requires `n <= 64` and a non-overflowing total.
    pub fn weight_of(&self, set: SubsetMask) -> u128 {
        mask::elements(set).map(|i| self.weights[i]).sum()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let Some((hl, header)) = lines.next() else {
            return Err(Error::parse(1, "empty input"));
        };
        let toks: Vec<&str> = header.split_whitespace().collect();
        let n: usize = match toks.first() {
            Some(t) => parse_num(t, hl, "item count")?,
            None => return Err(Error::parse(hl, "empty header")),
        };
        let mut inst = match toks.len() {
            2 => WeightedInstance::subset_sum(Vec::new(), parse_weight(toks[1], hl)?),
            3 => WeightedInstance::bin_packing(
                Vec::new(),
                parse_weight(toks[1], hl)?,
                parse_num(toks[2], hl, "bin count")?,
            ),
            _ => return Err(Error::parse(hl, "expected header 'n t' or 'n c k'")),
        };
        let mut last = hl;
        for (ln, line) in lines {
            last = ln;
            for tok in line.split_whitespace() {
                if inst.weights.len() == n {
                    return Err(Error::parse(ln, format!("more than {n} weights")));
                }
                inst.weights.push(parse_weight(tok, ln)?);
            }
        }
        if inst.weights.len() != n {
            return Err(Error::parse(last, format!("expected {n} weights, found {}", inst.weights.len())));
        }
        inst.total().map_err(|e| Error::parse(hl, e.to_string()))?;
        Ok(inst)
    }

    pub fn render(&self) -> String {
        let head = match (self.target, self.capacity, self.bins) {
            (Some(t), _, _) => format!("{} {}", self.n(), t),
            (None, Some(c), Some(k)) => format!("{} {} {}", self.n(), c, k),
            _ => format!("{} 0", self.n()),
        };
        let ws: Vec<String> = self.weights.iter().map(u128::to_string).collect();
        format!("{head}\n{}\n", ws.join(" "))
    }
}

fn parse_weight(tok: &str, line: usize) -> Result<u128> {
    if tok.starts_with('-') {
        return Err(Error::parse(line, format!("negative weight '{tok}'")));
    }
    parse_num(tok, line, "weight")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let w = WeightedInstance::parse("3 5\n1 2 4").unwrap();
        assert_eq!(w.weights, vec![1, 2, 4]);
        assert_eq!(w.target, Some(5));
        let b = WeightedInstance::parse("4 3 2\n3\n1\n1 1").unwrap();
        assert_eq!(b.capacity_and_bins().unwrap(), (3, 2));
        assert!(WeightedInstance::parse("2 1\n1 -1").is_err());
        assert!(WeightedInstance::parse("2 1\n1").is_err());
        let big = WeightedInstance::parse("1 0\n18446744073709551616").unwrap();
        assert_eq!(big.weights[0], 1u128 << 64);
    }

    #[test]
    fn round_trip() {
        for w in [
            WeightedInstance::subset_sum(vec![5, 0, 7], 12),
            WeightedInstance::bin_packing(vec![1, 2, 3], 3, 2),
        ] {
            assert_eq!(WeightedInstance::parse(&w.render()).unwrap(), w);
        }
    }
}
