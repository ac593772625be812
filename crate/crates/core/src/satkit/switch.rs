use rand::seq::index;
use rand::Rng;

use super::cdt::search_one_leaf;
use super::restriction::{apply_restriction, Restriction};
use super::SatOutcome;
use crate::instances::CnfFormula;
use crate::{Counters, Result, Seed};

/// Star count and tree depth safety valve for [`switch_sat`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SwitchConfig {
    /// Overrides `floor(n / (30k))`.
    pub stars: Option<usize>,
    /// Depth cap for each decision tree; defaults to `n`.
    pub depth_cap: Option<usize>,
}

/// The random-restriction algorithm: choose a uniform set `S` of
/// `floor(n / (30k))` variables, and for each of the `2^{n-|S|}` restrictions
/// leaving exactly `S` unset, search the canonical decision tree of the
/// restricted formula for a 1-leaf. Exact on both sides.
///
/// Counters: `stars`, `restriction_budget` (`2^{n-|S|}`), `restrictions_run`,
/// `cdt_nodes`.
pub fn switch_sat(phi: &CnfFormula, seed: Seed, config: SwitchConfig) -> Result<SatOutcome> {
    let n = phi.num_vars();
    let k = phi.max_width().max(1);
    let s = config.stars.unwrap_or(n / (30 * k)).min(n);
    let cap = config.depth_cap.unwrap_or(n);
    let mut rng = seed.rng();
    let star_vars = index::sample(&mut rng, n, s).into_vec();
    let mut is_star = vec![false; n];
    for &v in &star_vars {
        is_star[v] = true;
    }
    let fixed: Vec<usize> = (0..n).filter(|&v| !is_star[v]).collect();
    let mut counters = Counters::new();
    counters.set("stars", s as u64);
    let budget = 1u128.checked_shl(fixed.len() as u32).unwrap_or(u128::MAX);
    counters.set("restriction_budget", budget.min(u64::MAX as u128) as u64);
    counters.set("restrictions_run", 0);
    let mut bits = 0u128;
    while bits < budget {
        counters.incr("restrictions_run");
        let mut rho = Restriction::stars(n);
        for (i, &v) in fixed.iter().enumerate() {
            rho.set(v, Some(bits >> i & 1 == 1));
        }
        let reduced = apply_restriction(phi, &rho);
        let (found, nodes) = search_one_leaf(&reduced, cap)?;
        counters.add("cdt_nodes", nodes as u64);
        if found {
            let witness = complete_witness(phi, &rho);
            return Ok(SatOutcome {
                satisfiable: true,
                witness,
                counters,
            });
        }
        bits += 1;
    }
    Ok(SatOutcome {
        satisfiable: false,
        witness: None,
        counters,
    })
}

/// Extends `rho` to a satisfying total assignment by trying the stars.
fn complete_witness(phi: &CnfFormula, rho: &Restriction) -> Option<Vec<bool>> {
    let stars: Vec<usize> = (0..rho.len()).filter(|&v| rho.get(v).is_none()).collect();
    if stars.len() > 24 {
        return None;
    }
    let base: Vec<bool> = rho.values().iter().map(|v| v.unwrap_or(false)).collect();
    (0..1u64 << stars.len()).find_map(|bits| {
        let mut x = base.clone();
        for (i, &v) in stars.iter().enumerate() {
            x[v] = bits >> i & 1 == 1;
        }
        phi.eval(&x).then_some(x)
    })
}

/// Mean canonical decision tree size of `φ|ρ` over `samples` random
/// restrictions that leave each variable unset independently with
/// probability `p` and set the others uniformly.
pub fn cdt_size_diagnostic(phi: &CnfFormula, p: f64, samples: usize, seed: Seed) -> Result<f64> {
    let n = phi.num_vars();
    let mut rng = seed.rng();
    let mut total = 0usize;
    for _ in 0..samples {
        let mut rho = Restriction::stars(n);
        for v in 0..n {
            if !rng.random_bool(p) {
                rho.set(v, Some(rng.random()));
            }
        }
        let t = super::cdt::build_canonical_decision_tree(&apply_restriction(phi, &rho), n)?;
        total += t.node_count();
    }
    Ok(total as f64 / samples.max(1) as f64)
}
