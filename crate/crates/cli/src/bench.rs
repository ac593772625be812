use anyhow::{bail, Context, Result};
use clap::Args;
use exactexpo::sweep::{self, RowStatus, SweepAlgorithm, SweepConfig, SweepRow};
use exactexpo::Seed;
use rayon::prelude::*;

use crate::Global;

pub const THREADS_ENV: &str = "EXACTEXPO_THREADS";

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Smallest instance size.
    #[arg(long, default_value_t = 4)]
    min_n: usize,
    /// Largest instance size.
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, default_value_t = 1)]
    step: usize,
    /// Instances per (algorithm, n).
    #[arg(long, default_value_t = 3)]
    per_size: usize,
    /// Comma-separated algorithm names; all when omitted.
    #[arg(long, value_delimiter = ',')]
    algos: Vec<String>,
}

fn threads() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let n: usize = v.trim().parse().with_context(|| format!("{THREADS_ENV}={v} is not a count"))?;
            if n == 0 {
                bail!("{THREADS_ENV} must be positive");
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

/// Runs the sweep in parallel; rows come back in key order regardless of
/// completion order. Exits 1 when any row failed or broke a counter
/// identity.
pub fn run(a: &BenchArgs, g: &Global) -> Result<bool> {
    if a.step == 0 || a.min_n > a.max_n {
        bail!("empty size range {}..={} step {}", a.min_n, a.max_n, a.step);
    }
    let algorithms = if a.algos.is_empty() {
        SweepAlgorithm::ALL.to_vec()
    } else {
        a.algos.iter().map(|s| SweepAlgorithm::parse(s.trim())).collect::<exactexpo::Result<_>>()?
    };
    let cfg = SweepConfig {
        algorithms,
        sizes: (a.min_n..=a.max_n).step_by(a.step).collect(),
        per_size: a.per_size,
        seed: Seed(g.seed),
    };
    let keys = cfg.keys();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads()? {
        pool = pool.num_threads(n);
    }
    let rows: Vec<SweepRow> = pool
        .build()?
        .install(|| keys.par_iter().map(|&(alg, n, i)| sweep::run_row(alg, n, i, cfg.seed)).collect());
    print!("{}", sweep::render_csv(&rows, g.timing));
    let mut clean = true;
    for r in &rows {
        for v in &r.violations {
            eprintln!("violation: {} n={} instance={}: {v}", r.algorithm.name(), r.n, r.instance);
            clean = false;
        }
        if let RowStatus::Failed(msg) = &r.status {
            eprintln!("failed: {} n={} instance={}: {msg}", r.algorithm.name(), r.n, r.instance);
            clean = false;
        }
    }
    Ok(clean)
}
