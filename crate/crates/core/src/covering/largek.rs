use rand::Rng as _;

use super::{cross_middle_layer, set_cover_2n, CoverDecision, DownClosureOracle};
use crate::instances::SetSystem;
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result, Seed};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeKConfig {
    /// Sets with at least `eps1 * n` elements are handled by branching.
    pub eps1: f64,
    /// Width of the sampled cardinality band above `n/2`.
    pub eps2: f64,
    pub repetitions: usize,
}

impl Default for LargeKConfig {
    fn default() -> Self {
        Self {
            eps1: 0.2,
            eps2: 0.05,
            repetitions: 10,
        }
    }
}

fn compress(x: SubsetMask, keep: SubsetMask) -> SubsetMask {
    let mut out = 0;
    for (i, e) in mask::elements(keep).enumerate() {
        if x >> e & 1 == 1 {
            out |= 1 << i;
        }
    }
    out
}

/// Monte Carlo Set Cover for `k >= sigma * n`. Tries every large set as
/// one of the cover's members, then samples a crossing family from the
/// band `[⌈n/2⌉, ⌊(1/2 + eps2) n⌋]` with rate `2^(-sigma n)` and runs the
/// middle-layer crossing on `↓S`. Never accepts a NO instance.
///
/// Counters: `large_sets`, `band_size`, `sampled`, `repetitions_run`,
/// `accepted_in` (1-based repetition, 0 if none or via a large set).
pub fn set_cover_large_k(s: &SetSystem, k: usize, sigma: f64, seed: Seed, cfg: &LargeKConfig) -> Result<CoverDecision> {
    let n = s.n();
    if !(sigma > 0.0) || !(cfg.eps1 > 0.0) || cfg.eps2 < 0.0 {
        return Err(Error::InvalidParameters(format!(
            "need sigma > 0, eps1 > 0, eps2 >= 0; got {sigma}, {}, {}",
            cfg.eps1, cfg.eps2
        )));
    }
    if (k as f64) < sigma * n as f64 {
        return Err(Error::Precondition(format!("k = {k} is below sigma * n = {}", sigma * n as f64)));
    }
    let mut counters = Counters::new();
    if k == 0 {
        return Ok(CoverDecision::new(n == 0, counters));
    }
    let u = mask::full(n);
    let threshold = cfg.eps1 * n as f64;
    for &big in s.sets().iter().filter(|&&x| mask::size(x) as f64 >= threshold) {
        counters.incr("large_sets");
        let rest = u & !big;
        let m = mask::size(rest);
        let sets: Vec<SubsetMask> = s.sets().iter().map(|&x| compress(x, rest)).collect();
        let sub = SetSystem::new(m, sets)?;
        if set_cover_2n(&sub, k - 1)?.decision {
            return Ok(CoverDecision::new(true, counters));
        }
    }
    let lo = n.div_ceil(2);
    let hi = (((0.5 + cfg.eps2) * n as f64) + 1e-9).floor() as usize;
    let band: Vec<SubsetMask> = (lo..=hi.min(n)).flat_map(|size| mask::combinations(n, size)).collect();
    counters.set("band_size", band.len() as u64);
    let p = (-sigma * n as f64).exp2();
    let oracle = DownClosureOracle(s.sets());
    for r in 0..cfg.repetitions {
        let mut rng = seed.derive(r as u64).rng();
        let family: Vec<SubsetMask> = band.iter().copied().filter(|_| rng.random::<f64>() < p).collect();
        counters.add("sampled", family.len() as u64);
        counters.incr("repetitions_run");
        let out = cross_middle_layer(&oracle, n, &family, k)?;
        counters.add("masks_touched", out.counters.get("masks_touched"));
        if out.decision {
            counters.set("accepted_in", r as u64 + 1);
            return Ok(CoverDecision::new(true, counters));
        }
    }
    Ok(CoverDecision::new(false, counters))
}
