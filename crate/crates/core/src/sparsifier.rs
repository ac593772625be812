//! Sparsification of hitting-set instances by branching on good flowers.

use std::collections::HashMap;

use crate::instances::SetSystem;
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result};

/// Parameters `k`, `ε` and `α`, with `β_j = (4αk)^{j-1}` and `θ_j = α β_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparsifierConfig {
    pub k: usize,
    pub epsilon: f64,
    pub alpha: u64,
}

impl SparsifierConfig {
    /// `α = max(1, ceil(k lg(1/ε) / ε))`.
    pub fn new(k: usize, epsilon: f64) -> Result<Self> {
        if k == 0 || !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameters(format!("need k >= 1 and 0 < ε < 1, got k={k}, ε={epsilon}")));
        }
        let alpha = ((k as f64 * (1.0 / epsilon).log2() / epsilon).ceil() as u64).max(1);
        Ok(SparsifierConfig { k, epsilon, alpha })
    }

    pub fn with_alpha(k: usize, epsilon: f64, alpha: u64) -> Result<Self> {
        let mut c = Self::new(k, epsilon)?;
        if alpha == 0 {
            return Err(Error::InvalidParameters("α must be at least 1".into()));
        }
        c.alpha = alpha;
        Ok(c)
    }

    /// `β_j`, saturating.
    pub fn beta(&self, j: usize) -> u128 {
        if j == 0 {
            return 0;
        }
        let base = 4u128 * self.alpha as u128 * self.k as u128;
        (1..j).fold(1u128, |a, _| a.saturating_mul(base))
    }

    /// `θ_j = α β_j`, saturating.
    pub fn theta(&self, j: usize) -> u128 {
        (self.alpha as u128).saturating_mul(self.beta(j))
    }

    /// `θ_{k-1}`.
    pub fn degree_bound(&self) -> u128 {
        self.theta(self.k.saturating_sub(1))
    }

    /// `(4k² lg(1/ε) / ε)^{k-1}`.
    pub fn frequency_bound(&self) -> f64 {
        let k = self.k as f64;
        (4.0 * k * k * (1.0 / self.epsilon).log2() / self.epsilon).powi(self.k as i32 - 1)
    }

    /// `2^{2εn}`.
    pub fn output_bound(&self, n: usize) -> f64 {
        (2.0 * self.epsilon * n as f64).exp2()
    }
}

/// An `s`-flower: equal-size sets whose common intersection is the heart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flower {
    pub members: Vec<SubsetMask>,
    pub heart: SubsetMask,
    pub petal_size: usize,
}

/// The inclusion-minimal sets, without duplicates, ordered by (size, mask).
pub fn minimalize(family: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut sorted: Vec<SubsetMask> = family.to_vec();
    sorted.sort_unstable_by_key(|&m| (mask::size(m), m));
    sorted.dedup();
    let mut out: Vec<SubsetMask> = Vec::with_capacity(sorted.len());
    for s in sorted {
        if !out.iter().any(|&t| mask::is_subset(t, s)) {
            out.push(s);
        }
    }
    out
}

/// Looks for an `(s-p)`-set contained in at least `max(θ, 2)` sets of size
/// `s` whose common intersection is exactly that set. The smallest such
/// heart is returned with all its `s`-supersets.
pub fn find_good_flower(family: &[SubsetMask], s: usize, p: usize, theta: u128) -> Option<Flower> {
    if p == 0 || p >= s {
        return None;
    }
    let h = s - p;
    let s_sets: Vec<SubsetMask> = family.iter().copied().filter(|&m| mask::size(m) == s).collect();
    if (s_sets.len() as u128) < theta.max(2) {
        return None;
    }
    let mut count: HashMap<SubsetMask, u128> = HashMap::new();
    for &set in &s_sets {
        for sub in sub_combinations(set, h) {
            *count.entry(sub).or_insert(0) += 1;
        }
    }
    let mut hearts: Vec<SubsetMask> = count
        .into_iter()
        .filter(|&(_, c)| c >= theta.max(2))
        .map(|(m, _)| m)
        .collect();
    hearts.sort_unstable();
    hearts.into_iter().find_map(|heart| {
        let members: Vec<SubsetMask> = s_sets.iter().copied().filter(|&m| mask::is_subset(heart, m)).collect();
        let inter = members.iter().fold(mask::full(64), |a, &m| a & m);
        (inter == heart).then_some(Flower {
            members,
            heart,
            petal_size: p,
        })
    })
}

/// All `h`-element subsets of `set`.
fn sub_combinations(set: SubsetMask, h: usize) -> impl Iterator<Item = SubsetMask> {
    let elems: Vec<usize> = mask::elements(set).collect();
    mask::combinations(elems.len(), h).map(move |c| mask::elements(c).fold(0, |a, i| a | 1u64 << elems[i]))
}

/// `σ(F)`: the largest `s < k` such that for all `j <= s` and `1 <= h < j`
/// every `h`-set lies in at most `2θ_{j-h}` sets of size `j`.
pub fn sigma(family: &[SubsetMask], config: &SparsifierConfig) -> usize {
    let mut s = 0;
    for j in 1..config.k {
        let j_sets: Vec<SubsetMask> = family.iter().copied().filter(|&m| mask::size(m) == j).collect();
        let ok = (1..j).all(|h| {
            let mut count: HashMap<SubsetMask, u128> = HashMap::new();
            for &set in &j_sets {
                for sub in sub_combinations(set, h) {
                    *count.entry(sub).or_insert(0) += 1;
                }
            }
            count.values().all(|&c| c <= config.theta(j - h).saturating_mul(2))
        });
        if !ok {
            break;
        }
        s = j;
    }
    s
}

/// Output of [`reduce`].
#[derive(Debug, Clone)]
pub struct Reduction {
    /// Output families, heart branches before petal branches.
    pub outputs: Vec<SetSystem>,
    pub counters: Counters,
    /// Branch steps where `σ` decreased from parent to child (only filled
    /// when tracing).
    pub sigma_violations: usize,
}

const NODE_CAP: u64 = 1 << 22;

/// Algorithm "reduce": for `s = 2..k` and `p = 1..s-1`, branch on the first
/// good `s`-flower with petal size `p` into `π(F ∪ {H})` and
/// `π(F ∪ {S_i \ H})`; a family without good flowers is an output.
pub fn reduce(family: &SetSystem, config: &SparsifierConfig) -> Result<Reduction> {
    reduce_impl(family, config, false)
}

/// [`reduce`] that also recomputes `σ` at every node.
pub fn reduce_traced(family: &SetSystem, config: &SparsifierConfig) -> Result<Reduction> {
    reduce_impl(family, config, true)
}

fn reduce_impl(family: &SetSystem, config: &SparsifierConfig, trace: bool) -> Result<Reduction> {
    if family.max_set_size() > config.k {
        return Err(Error::Precondition(format!("a set is larger than k = {}", config.k)));
    }
    let n = family.n();
    let mut counters = Counters::new();
    let mut outputs = Vec::new();
    let mut sigma_violations = 0;
    let root = minimalize(family.sets());
    let mut stack: Vec<(Vec<SubsetMask>, Option<usize>)> = vec![(root, None)];
    while let Some((f, parent_sigma)) = stack.pop() {
        counters.incr("nodes");
        if counters.get("nodes") > NODE_CAP {
            return Err(Error::Internal("sparsifier recursion exceeded its node cap".into()));
        }
        if trace {
            let sg = sigma(&f, config);
            if parent_sigma.is_some_and(|p| sg < p) {
                sigma_violations += 1;
            }
        }
        let my_sigma = trace.then(|| sigma(&f, config));
        match first_good_flower(&f, config) {
            None => outputs.push(SetSystem::new(n, f)?),
            Some(fl) => {
                counters.incr("branchings");
                let mut heart = f.clone();
                heart.push(fl.heart);
                let mut petals = f;
                petals.extend(fl.members.iter().map(|&m| m & !fl.heart));
                stack.push((minimalize(&petals), my_sigma));
                stack.push((minimalize(&heart), my_sigma));
            }
        }
    }
    counters.set("outputs", outputs.len() as u64);
    Ok(Reduction {
        outputs,
        counters,
        sigma_violations,
    })
}

fn first_good_flower(f: &[SubsetMask], config: &SparsifierConfig) -> Option<Flower> {
    for s in 2..=config.k {
        for p in 1..s {
            if let Some(fl) = find_good_flower(f, s, p, config.theta(p)) {
                return Some(fl);
            }
        }
    }
    None
}

/// Result of checking a sparsifier run against its guarantees.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsifierReport {
    /// `None` when the universe is too large to enumerate.
    pub equivalent: Option<bool>,
    /// A set `X` on which `F` and the outputs disagree.
    pub counterexample: Option<SubsetMask>,
    pub max_frequency: u64,
    pub frequency_bound: f64,
    pub frequency_ok: bool,
    pub output_count: usize,
    pub output_bound: f64,
    pub count_ok: bool,
}

impl SparsifierReport {
    pub fn passed(&self) -> bool {
        self.equivalent != Some(false) && self.frequency_ok && self.count_ok
    }
}

/// Largest number of sets of one family containing a single element.
pub fn max_frequency(family: &SetSystem) -> u64 {
    (0..family.n())
        .map(|e| family.sets().iter().filter(|&&s| s >> e & 1 == 1).count() as u64)
        .max()
        .unwrap_or(0)
}

/// Checks hitting-set equivalence over all `X ⊆ U` (when `|U| <= 20`), the
/// per-output element frequency against `(4k² lg(1/ε)/ε)^{k-1}`, and the
/// output count against `2^{2ε|U|}`.
pub fn verify_sparsifier_output(family: &SetSystem, outputs: &[SetSystem], config: &SparsifierConfig) -> SparsifierReport {
    let n = family.n();
    let hits = |f: &SetSystem, x: SubsetMask| f.sets().iter().all(|&s| s & x != 0);
    let (equivalent, counterexample) = if n <= 20 {
        let bad = (0..=mask::full(n)).find(|&x| hits(family, x) != outputs.iter().any(|o| hits(o, x)));
        (Some(bad.is_none()), bad)
    } else {
        (None, None)
    };
    let max_f = outputs.iter().map(max_frequency).max().unwrap_or(0);
    let d = config.frequency_bound();
    let bound = config.output_bound(n);
    SparsifierReport {
        equivalent,
        counterexample,
        max_frequency: max_f,
        frequency_bound: d,
        frequency_ok: max_f as f64 <= d,
        output_count: outputs.len(),
        output_bound: bound,
        count_ok: outputs.len() as f64 <= bound,
    }
}
