//! Seeded benchmark sweeps: one row per (algorithm, n, instance) with the
//! solver's counters and the exact counter identities each row must obey.

use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng as _;

use crate::coloring::{three_coloring_15n, trial_count_15n};
use crate::covering::{set_cover_2n, set_cover_trimmed};
use crate::hamiltonicity::{
    count_ham_cycles_mod_p, ham_cycles_through_arc_exact, known_narrow_cut_family, narrow_cut_hamiltonicity,
    undirected_ham_2n, ModPConfig, NarrowCutFamily, PitConfig,
};
use crate::instances::{generate, WeightedInstance};
use crate::satkit::{fibonacci_step_bound, local_search, monien_speckenmeyer, schoening, switch_sat, SwitchConfig};
use crate::subsetsum::{meet_in_middle, representation_method};
use crate::{mask, Counters, Error, Result, Seed};

/// Algorithms available to sweeps, in output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SweepAlgorithm {
    Ms,
    LocalSearch,
    Schoening,
    SwitchSat,
    SetCover2n,
    SetCoverTrimmed,
    Color15n,
    Ham2n,
    NarrowCut,
    ExactIe,
    CountModP,
    Mitm,
    Rep,
}

impl SweepAlgorithm {
    pub const ALL: [SweepAlgorithm; 13] = [
        SweepAlgorithm::Ms,
        SweepAlgorithm::LocalSearch,
        SweepAlgorithm::Schoening,
        SweepAlgorithm::SwitchSat,
        SweepAlgorithm::SetCover2n,
        SweepAlgorithm::SetCoverTrimmed,
        SweepAlgorithm::Color15n,
        SweepAlgorithm::Ham2n,
        SweepAlgorithm::NarrowCut,
        SweepAlgorithm::ExactIe,
        SweepAlgorithm::CountModP,
        SweepAlgorithm::Mitm,
        SweepAlgorithm::Rep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepAlgorithm::Ms => "ms",
            SweepAlgorithm::LocalSearch => "local-search",
            SweepAlgorithm::Schoening => "schoening",
            SweepAlgorithm::SwitchSat => "switch",
            SweepAlgorithm::SetCover2n => "setcover-transform",
            SweepAlgorithm::SetCoverTrimmed => "setcover-trimmed",
            SweepAlgorithm::Color15n => "color-15n",
            SweepAlgorithm::Ham2n => "ham-cuts2n",
            SweepAlgorithm::NarrowCut => "ham-narrow",
            SweepAlgorithm::ExactIe => "ham-exact-ie",
            SweepAlgorithm::CountModP => "ham-count-mod-p",
            SweepAlgorithm::Mitm => "subsetsum-mitm",
            SweepAlgorithm::Rep => "subsetsum-rep",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == name)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown sweep algorithm `{name}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    BudgetExceeded(String),
    Unsupported(String),
    Failed(String),
}

impl RowStatus {
    pub fn label(&self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::BudgetExceeded(_) => "budget-exceeded",
            RowStatus::Unsupported(_) => "unsupported",
            RowStatus::Failed(_) => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub algorithm: SweepAlgorithm,
    pub n: usize,
    pub instance: usize,
    pub status: RowStatus,
    pub decision: Option<bool>,
    pub elapsed_ms: u128,
    pub counters: Counters,
    /// Counter identities that failed on this row.
    pub violations: Vec<String>,
}

/// The seed of one row, independent of which other rows are run.
pub fn row_seed(base: Seed, alg: SweepAlgorithm, n: usize, instance: usize) -> Seed {
    base.derive(alg as u64).derive(n as u64).derive(instance as u64)
}

fn pow_u64(b: u64, e: usize) -> u64 {
    b.saturating_pow(e as u32)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn expect(v: &mut Vec<String>, what: &str, got: u64, want: u64) {
    if got != want {
        v.push(format!("{what}: got {got}, expected {want}"));
    }
}

fn expect_le(v: &mut Vec<String>, what: &str, got: u128, bound: u128) {
    if got > bound {
        v.push(format!("{what}: {got} exceeds {bound}"));
    }
}

struct Run {
    decision: Option<bool>,
    counters: Counters,
    violations: Vec<String>,
}

fn subset_sum_instance(n: usize, seed: Seed) -> WeightedInstance {
    let mut rng = seed.rng();
    let w: Vec<u128> = (0..n).map(|_| rng.random_range(1..=(1u128 << n.min(100)))).collect();
    generate::planted_from_weights(w).0
}

fn run(alg: SweepAlgorithm, n: usize, seed: Seed) -> Result<Run> {
    let mut v = Vec::new();
    let cnf = || generate::planted_kcnf(n, (4.0 * n as f64).ceil() as usize, 3.min(n.max(1)), seed).map(|x| x.0);
    let (decision, counters) = match alg {
        SweepAlgorithm::Ms => {
            let phi = cnf()?;
            let out = monien_speckenmeyer(&phi);
            expect_le(&mut v, "ms leaves", out.counters.get("leaves") as u128, fibonacci_step_bound(phi.max_width(), n));
            (Some(out.satisfiable), out.counters)
        }
        SweepAlgorithm::LocalSearch => {
            let phi = cnf()?;
            let d = n.div_ceil(4);
            let x: Vec<bool> = {
                let mut rng = seed.derive(1).rng();
                (0..n).map(|_| rng.random()).collect()
            };
            let out = local_search(&phi, &x, d);
            let k = phi.max_width().max(1) as u128;
            let leaves_bound = k.saturating_pow(d as u32);
            let calls_bound = (0..=d as u32).map(|i| k.saturating_pow(i)).sum();
            expect_le(&mut v, "local-search leaves", out.counters.get("leaves") as u128, leaves_bound);
            expect_le(&mut v, "local-search calls", out.counters.get("calls") as u128, calls_bound);
            (Some(out.satisfiable), out.counters)
        }
        SweepAlgorithm::Schoening => {
            let phi = cnf()?;
            let out = schoening(&phi, seed.derive(1));
            let d = n.div_ceil(phi.max_width().max(1) + 1);
            let trials = (1u128 << n).div_ceil(binomial(n, d));
            expect(&mut v, "schoening trials", out.counters.get("trials_budget"), trials as u64);
            (Some(out.satisfiable), out.counters)
        }
        SweepAlgorithm::SwitchSat => {
            let phi = cnf()?;
            let out = switch_sat(&phi, seed.derive(1), SwitchConfig::default())?;
            (Some(out.satisfiable), out.counters)
        }
        SweepAlgorithm::SetCover2n => {
            let s = generate::random_set_system(n, n, n.div_ceil(2), seed)?;
            let out = set_cover_2n(&s, 3)?;
            expect(&mut v, "transform passes", out.counters.get("passes"), 2 * n as u64);
            expect(&mut v, "transform masks", out.counters.get("masks_touched"), 2 * n as u64 * (1 << n));
            (Some(out.decision), out.counters)
        }
        SweepAlgorithm::SetCoverTrimmed => {
            let s = generate::random_set_system(n, n, n.div_ceil(2), seed)?;
            let out = set_cover_trimmed(&s, 3)?;
            let closure = (0..1u64 << n).filter(|&x| s.sets().iter().any(|&y| mask::is_subset(y, x))).count() as u64;
            expect(&mut v, "trimmed closure", out.counters.get("closure_size"), closure);
            expect(&mut v, "trimmed masks", out.counters.get("masks_touched"), out.counters.get("passes") * closure);
            (Some(out.decision), out.counters)
        }
        SweepAlgorithm::Color15n => {
            let (g, _) = generate::planted_colorable(n, 3, 0.5, seed);
            let out = three_coloring_15n(&g, seed.derive(1), None)?;
            expect(&mut v, "15n trials", out.counters.get("trials_budget"), trial_count_15n(n));
            (Some(out.coloring.is_some()), out.counters)
        }
        SweepAlgorithm::Ham2n => {
            let g = generate::random_graph(n, 0.5, false, seed);
            let out = undirected_ham_2n(&g, seed.derive(1), &PitConfig::default())?;
            if n.is_multiple_of(2) && n >= 4 {
                expect(&mut v, "cuts2n cuts", out.counters.get("cuts"), 1 << (n - 1));
            }
            (Some(out.decision), out.counters)
        }
        SweepAlgorithm::NarrowCut => {
            let Some(cuts) = known_narrow_cut_family(n) else {
                return Err(Error::InvalidParameters(format!("no cut family for n = {n}")));
            };
            let fam = NarrowCutFamily::new(n, cuts)?;
            let g = generate::random_graph(n, 0.5, false, seed);
            let out = narrow_cut_hamiltonicity(&g, &fam, seed.derive(1), &PitConfig::default(), false)?;
            expect(&mut v, "narrow cuts", out.counters.get("cuts"), pow_u64(3, n / 2 - 1));
            (Some(out.decision), out.counters)
        }
        SweepAlgorithm::ExactIe => {
            let mut g = generate::random_graph(n, 0.5, true, seed);
            if n < 2 {
                return Err(Error::InvalidParameters("need n >= 2".into()));
            }
            g.set_arc(n - 1, 0, 1)?;
            let (count, counters) = ham_cycles_through_arc_exact(&g, n - 1, 0)?;
            expect(&mut v, "exact-ie subsets", counters.get("subsets"), 1 << (n - 1));
            (Some(count > 0.into()), counters)
        }
        SweepAlgorithm::CountModP => {
            let g = generate::random_graph(n, 0.5, true, seed);
            let out = count_ham_cycles_mod_p(&g, 3, seed.derive(1), &ModPConfig::default())?;
            let c = &out.counters;
            expect(&mut v, "mod-p subsets", c.get("determinants") + c.get("skipped"), c.get("subsets"));
            (None, out.counters)
        }
        SweepAlgorithm::Mitm => {
            let inst = subset_sum_instance(n, seed);
            let out = meet_in_middle(&inst)?;
            expect(&mut v, "mitm list_l", out.counters.get("list_l"), 1 << n.div_ceil(2));
            expect(&mut v, "mitm list_r", out.counters.get("list_r"), 1 << (n / 2));
            (Some(out.witness.is_some()), out.counters)
        }
        SweepAlgorithm::Rep => {
            let inst = subset_sum_instance(n, seed);
            let out = representation_method(&inst, seed.derive(1), 20)?;
            if let Some(x) = out.witness {
                if inst.weight_of(x) != inst.target()? {
                    v.push("representation witness has the wrong weight".into());
                }
            }
            (Some(out.witness.is_some()), out.counters)
        }
    };
    Ok(Run {
        decision,
        counters,
        violations: v,
    })
}

/// Runs one row.
pub fn run_row(alg: SweepAlgorithm, n: usize, instance: usize, base: Seed) -> SweepRow {
    let start = Instant::now();
    let result = run(alg, n, row_seed(base, alg, n, instance));
    let elapsed_ms = start.elapsed().as_millis();
    let (status, decision, counters, violations) = match result {
        Ok(r) => (RowStatus::Ok, r.decision, r.counters, r.violations),
        Err(Error::BudgetExceeded(m)) => (RowStatus::BudgetExceeded(m), None, Counters::new(), vec![]),
        Err(Error::InvalidParameters(m)) => (RowStatus::Unsupported(m), None, Counters::new(), vec![]),
        Err(e) => (RowStatus::Failed(e.to_string()), None, Counters::new(), vec![]),
    };
    SweepRow {
        algorithm: alg,
        n,
        instance,
        status,
        decision,
        elapsed_ms,
        counters,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub algorithms: Vec<SweepAlgorithm>,
    pub sizes: Vec<usize>,
    pub per_size: usize,
    pub seed: Seed,
}

impl SweepConfig {
    /// Row keys in output order.
    pub fn keys(&self) -> Vec<(SweepAlgorithm, usize, usize)> {
        let mut algs = self.algorithms.clone();
        algs.sort();
        algs.dedup();
        let mut keys = Vec::new();
        for a in algs {
            for &n in &self.sizes {
                for i in 0..self.per_size {
                    keys.push((a, n, i));
                }
            }
        }
        keys
    }
}

/// Runs every row sequentially, in output order.
pub fn run_sweep(cfg: &SweepConfig) -> Vec<SweepRow> {
    cfg.keys().into_iter().map(|(a, n, i)| run_row(a, n, i, cfg.seed)).collect()
}

pub const CSV_HEADER: &str = "algorithm,n,instance,status,decision,elapsed_ms,counters";

fn geomean(xs: &[f64]) -> f64 {
    if xs.is_empty() || xs.iter().any(|&x| x <= 0.0) {
        return 0.0;
    }
    (xs.iter().map(|x| x.ln()).sum::<f64>() / xs.len() as f64).exp()
}

/// CSV with one line per row and a `geomean` summary line per
/// (algorithm, n) over the rows with status `ok`. Without `timing` every
/// elapsed time is written as 0.
pub fn render_csv(rows: &[SweepRow], timing: bool) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    let mut i = 0;
    while i < rows.len() {
        let (a, n) = (rows[i].algorithm, rows[i].n);
        let j = i + rows[i..].iter().take_while(|r| r.algorithm == a && r.n == n).count();
        let group = &rows[i..j];
        for r in group {
            let decision = r.decision.map_or(String::new(), |d| d.to_string());
            let ms = if timing { r.elapsed_ms } else { 0 };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                a.name(),
                n,
                r.instance,
                r.status.label(),
                decision,
                ms,
                r.counters
            );
        }
        let ok: Vec<&SweepRow> = group.iter().filter(|r| r.status == RowStatus::Ok).collect();
        let mut names: Vec<&'static str> = ok.iter().flat_map(|r| r.counters.iter().map(|(k, _)| k)).collect();
        names.sort_unstable();
        names.dedup();
        let summary: Vec<String> = names
            .iter()
            .map(|k| {
                let xs: Vec<f64> = ok.iter().map(|r| r.counters.get(k) as f64).collect();
                format!("{k}={:.3}", geomean(&xs))
            })
            .collect();
        let ms: Vec<f64> = ok.iter().map(|r| if timing { r.elapsed_ms as f64 } else { 0.0 }).collect();
        let _ = writeln!(
            out,
            "{},{},geomean,summary,,{:.3},{}",
            a.name(),
            n,
            geomean(&ms),
            summary.join(";")
        );
        i = j;
    }
    out
}
