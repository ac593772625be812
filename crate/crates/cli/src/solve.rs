use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use exactexpo::covering::{self, DownClosureOracle, LargeKConfig};
use exactexpo::hamiltonicity::{self, ModPConfig, NarrowCutFamily, PitConfig};
use exactexpo::oracles::{self, OracleBudget};
use exactexpo::satkit::{self, SatOutcome, SwitchConfig};
use exactexpo::sparsifier::{self, SparsifierConfig};
use exactexpo::{coloring, subsetsum, CnfFormula, Multigraph, Seed, SetSystem, WeightedInstance};
use serde_json::{json, Value};

use crate::output::{one_based, read, RunResult};
use crate::Global;

fn timed<T>(g: &Global, f: impl FnOnce() -> T) -> (T, Option<u64>) {
    let start = Instant::now();
    let out = f();
    let ms = g.timing.then(|| start.elapsed().as_millis() as u64);
    (out, ms)
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum SatAlgo {
    Ms,
    LocalSearch,
    Schoening,
    Switch,
    Brute,
}

#[derive(Args, Debug)]
pub struct SatArgs {
    #[arg(long, value_enum)]
    algo: SatAlgo,
    /// Unset variables per restriction (switch).
    #[arg(long)]
    stars: Option<usize>,
    /// Hamming radius around the all-false assignment (local-search); defaults to n.
    #[arg(long)]
    radius: Option<usize>,
    file: PathBuf,
}

fn assignment(x: &[bool]) -> Value {
    Value::from(
        x.iter()
            .enumerate()
            .map(|(i, &v)| if v { i as i64 + 1 } else { -(i as i64 + 1) })
            .collect::<Vec<_>>(),
    )
}

pub fn sat(a: &SatArgs, g: &Global) -> Result<bool> {
    let phi = CnfFormula::parse(&read(&a.file)?).context("parsing CNF")?;
    let seed = Seed(g.seed);
    let name = match a.algo {
        SatAlgo::Ms => "ms",
        SatAlgo::LocalSearch => "local-search",
        SatAlgo::Schoening => "schoening",
        SatAlgo::Switch => "switch",
        SatAlgo::Brute => "brute",
    };
    let (out, ms) = timed(g, || -> Result<SatOutcome> {
        Ok(match a.algo {
            SatAlgo::Ms => satkit::monien_speckenmeyer(&phi),
            SatAlgo::LocalSearch => {
                let x = vec![false; phi.num_vars()];
                satkit::local_search(&phi, &x, a.radius.unwrap_or(phi.num_vars()))
            }
            SatAlgo::Schoening => satkit::schoening(&phi, seed),
            SatAlgo::Switch => satkit::switch_sat(
                &phi,
                seed,
                SwitchConfig {
                    stars: a.stars,
                    ..Default::default()
                },
            )?,
            SatAlgo::Brute => {
                let w = oracles::sat(&phi, &OracleBudget::default())?;
                SatOutcome {
                    satisfiable: w.is_some(),
                    witness: w,
                    counters: Default::default(),
                }
            }
        })
    });
    let out = out?;
    let mut r = RunResult::new("sat", name, &phi.render(), g.seed);
    r.decision = Some(out.satisfiable);
    r.witness = out.witness.as_deref().map(assignment);
    r.counters(&out.counters);
    r.elapsed_ms = ms;
    r.emit()
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum ColorAlgo {
    #[value(name = "15n")]
    N15,
    Cover,
    CoverTrimmed,
    Containers,
    Brute,
}

#[derive(Args, Debug)]
pub struct ColorArgs {
    #[arg(long, value_enum)]
    algo: ColorAlgo,
    /// Number of colors.
    #[arg(long)]
    k: usize,
    /// Set-system file of containers over the vertex set (containers).
    #[arg(long)]
    containers: Option<PathBuf>,
    /// Largest container union is (1 - eps) n (containers).
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// Trial cap for 15n.
    #[arg(long)]
    budget: Option<u64>,
    file: PathBuf,
}

fn colors(c: &[usize]) -> Value {
    Value::from(c.iter().map(|&x| x + 1).collect::<Vec<_>>())
}

fn load_containers(path: &Option<PathBuf>, n: usize) -> Result<Vec<u64>> {
    let Some(path) = path else {
        bail!("--containers is required for the containers algorithm");
    };
    let s = SetSystem::parse(&read(path)?).context("parsing containers")?;
    if s.n() != n {
        bail!("containers are over a universe of {} elements, expected {n}", s.n());
    }
    Ok(s.sets().to_vec())
}

pub fn color(a: &ColorArgs, g: &Global) -> Result<bool> {
    let graph = Multigraph::parse(&read(&a.file)?, false).context("parsing graph")?;
    let seed = Seed(g.seed);
    let (name, trimmed) = match a.algo {
        ColorAlgo::N15 => ("15n", false),
        ColorAlgo::Cover => ("cover", false),
        ColorAlgo::CoverTrimmed => ("cover-trimmed", true),
        ColorAlgo::Containers => ("containers", false),
        ColorAlgo::Brute => ("brute", false),
    };
    if matches!(a.algo, ColorAlgo::N15) && a.k != 3 {
        bail!("15n decides 3-colorability; got --k {}", a.k);
    }
    let containers = match a.algo {
        ColorAlgo::Containers => load_containers(&a.containers, graph.n())?,
        _ => Vec::new(),
    };
    let (out, ms) = timed(g, || -> Result<(bool, Option<Vec<usize>>, exactexpo::Counters)> {
        Ok(match a.algo {
            ColorAlgo::N15 => {
                let o = coloring::three_coloring_15n(&graph, seed, a.budget)?;
                (o.coloring.is_some(), o.coloring, o.counters)
            }
            ColorAlgo::Cover | ColorAlgo::CoverTrimmed => {
                let o = coloring::k_coloring_via_cover(&graph, a.k, trimmed)?;
                (o.decision, None, o.counters)
            }
            ColorAlgo::Containers => {
                let o = coloring::regular_coloring_with_containers(&graph, a.k, &containers, a.eps)?;
                (o.decision, None, o.counters)
            }
            ColorAlgo::Brute => {
                let c = oracles::coloring(&graph, a.k, &OracleBudget::default())?;
                (c.is_some(), c, Default::default())
            }
        })
    });
    let (decision, witness, counters) = out?;
    let mut r = RunResult::new("color", name, &graph.render(), g.seed);
    r.decision = Some(decision);
    r.witness = witness.as_deref().map(colors);
    r.counters(&counters);
    r.elapsed_ms = ms;
    r.emit()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoverAlgo {
    Transform,
    Trimmed,
    LargeK,
    Containers,
    Tight,
    Dp,
    Brute,
}

impl CoverAlgo {
    fn name(self) -> &'static str {
        match self {
            CoverAlgo::Transform => "transform",
            CoverAlgo::Trimmed => "trimmed",
            CoverAlgo::LargeK => "large-k",
            CoverAlgo::Containers => "containers",
            CoverAlgo::Tight => "tight",
            CoverAlgo::Dp => "dp",
            CoverAlgo::Brute => "brute",
        }
    }
}

#[derive(Args, Debug)]
pub struct SetCoverArgs {
    #[arg(long, value_enum)]
    algo: CoverAlgo,
    /// Number of sets in the cover; containers uses one set per container.
    #[arg(long)]
    k: Option<usize>,
    /// Lower bound on k / n (large-k); defaults to k / n.
    #[arg(long)]
    sigma: Option<f64>,
    /// Width of the sampled band above n/2 (large-k).
    #[arg(long, default_value_t = LargeKConfig::default().eps2)]
    eps2: f64,
    /// Repetitions (large-k).
    #[arg(long, default_value_t = LargeKConfig::default().repetitions)]
    reps: usize,
    #[arg(long)]
    containers: Option<PathBuf>,
    /// Largest container union is (1 - eps) n (containers).
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    file: PathBuf,
}

pub fn setcover(a: &SetCoverArgs, g: &Global) -> Result<bool> {
    let s = SetSystem::parse(&read(&a.file)?).context("parsing set system")?;
    let n = s.n();
    let containers = match a.algo {
        CoverAlgo::Containers => load_containers(&a.containers, n)?,
        _ => Vec::new(),
    };
    let k = match (a.algo, a.k) {
        (CoverAlgo::Containers, Some(k)) if k != containers.len() => {
            bail!("--k {k} disagrees with {} containers", containers.len())
        }
        (CoverAlgo::Containers, _) => containers.len(),
        (_, Some(k)) => k,
        (_, None) => bail!("--k is required"),
    };
    let seed = Seed(g.seed);
    let (out, ms) = timed(g, || -> Result<(bool, Option<String>, exactexpo::Counters)> {
        Ok(match a.algo {
            CoverAlgo::Transform => {
                let o = covering::set_cover_2n(&s, k)?;
                (o.decision, Some(o.count.to_string()), o.counters)
            }
            CoverAlgo::Trimmed => {
                let o = covering::set_cover_trimmed(&s, k)?;
                (o.decision, Some(o.count.to_string()), o.counters)
            }
            CoverAlgo::LargeK => {
                let sigma = a.sigma.unwrap_or(if n == 0 { 1.0 } else { k as f64 / n as f64 });
                let cfg = LargeKConfig {
                    eps2: a.eps2,
                    repetitions: a.reps,
                    ..Default::default()
                };
                let o = covering::set_cover_large_k(&s, k, sigma, seed, &cfg)?;
                (o.decision, None, o.counters)
            }
            CoverAlgo::Containers => {
                let o = covering::set_cover_with_containers(&DownClosureOracle(s.sets()), n, &containers, a.eps)?;
                (o.decision, None, o.counters)
            }
            CoverAlgo::Brute => {
                let c = oracles::set_cover_count(&s, k, &OracleBudget::default())?;
                (c > 0, Some(c.to_string()), Default::default())
            }
            CoverAlgo::Tight | CoverAlgo::Dp => bail!("algorithm {} applies to binpack, not setcover", a.algo.name()),
        })
    });
    let (decision, count, counters) = out?;
    let mut r = RunResult::new("setcover", a.algo.name(), &s.render(), g.seed);
    r.decision = Some(decision);
    r.count = count;
    r.counters(&counters);
    r.elapsed_ms = ms;
    r.emit()
}

#[derive(Args, Debug)]
pub struct BinPackArgs {
    #[arg(long, value_enum)]
    algo: CoverAlgo,
    /// State budget (dp).
    #[arg(long, default_value_t = covering::DEFAULT_DP_BUDGET)]
    budget: u64,
    file: PathBuf,
}

pub fn binpack(a: &BinPackArgs, g: &Global) -> Result<bool> {
    let inst = WeightedInstance::parse(&read(&a.file)?).context("parsing weighted instance")?;
    inst.capacity_and_bins().context("binpack needs a capacity and a bin count")?;
    let (out, ms) = timed(g, || -> Result<(bool, Option<Vec<usize>>, exactexpo::Counters)> {
        Ok(match a.algo {
            CoverAlgo::Tight => {
                let o = covering::bin_packing_tight(&inst)?;
                (o.decision, None, o.counters)
            }
            CoverAlgo::Dp => {
                let o = covering::bin_packing_distinct_sums_dp(&inst, a.budget)?;
                (o.decision, None, o.counters)
            }
            CoverAlgo::Brute => {
                let bins = oracles::bin_packing(&inst, &OracleBudget::default())?;
                (bins.is_some(), bins, Default::default())
            }
            other => bail!("algorithm {} applies to setcover, not binpack", other.name()),
        })
    });
    let (decision, witness, counters) = out?;
    let mut r = RunResult::new("binpack", a.algo.name(), &inst.render(), g.seed);
    r.decision = Some(decision);
    r.witness = witness.as_deref().map(colors);
    r.counters(&counters);
    r.elapsed_ms = ms;
    r.emit()
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum HamAlgo {
    Cuts2n,
    Narrow,
    CountModP,
    ExactIe,
    Brute,
}

#[derive(Args, Debug)]
pub struct HamArgs {
    #[arg(long, value_enum)]
    algo: HamAlgo,
    /// Read arcs instead of edges.
    #[arg(long)]
    directed: bool,
    /// Prime modulus (count-mod-p).
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Independent evaluations (cuts2n, narrow).
    #[arg(long, default_value_t = PitConfig::default().repetitions)]
    reps: usize,
    /// Cut family file (narrow); built-in families exist for n = 4 and 6.
    #[arg(long)]
    family: Option<PathBuf>,
    /// Arc T S, 1-based, through which cycles are counted (exact-ie).
    #[arg(long, num_args = 2, value_names = ["T", "S"])]
    arc: Option<Vec<usize>>,
    file: PathBuf,
}

pub fn ham(a: &HamArgs, g: &Global) -> Result<bool> {
    let graph = Multigraph::parse(&read(&a.file)?, a.directed).context("parsing graph")?;
    let seed = Seed(g.seed);
    let cfg = PitConfig { repetitions: a.reps };
    let name = match a.algo {
        HamAlgo::Cuts2n => "cuts2n",
        HamAlgo::Narrow => "narrow",
        HamAlgo::CountModP => "count-mod-p",
        HamAlgo::ExactIe => "exact-ie",
        HamAlgo::Brute => "brute",
    };
    let family = match (a.algo, &a.family) {
        (HamAlgo::Narrow, Some(path)) => Some(NarrowCutFamily::parse(&read(path)?).context("parsing cut family")?),
        (HamAlgo::Narrow, None) => {
            let cuts = hamiltonicity::known_narrow_cut_family(graph.n())
                .with_context(|| format!("no built-in cut family for n = {}; pass --family", graph.n()))?;
            Some(NarrowCutFamily::new(graph.n(), cuts)?)
        }
        _ => None,
    };
    let arc = match (a.algo, &a.arc) {
        (HamAlgo::ExactIe, Some(v)) => {
            if v.contains(&0) {
                bail!("--arc takes 1-based vertices");
            }
            Some((v[0] - 1, v[1] - 1))
        }
        (HamAlgo::ExactIe, None) => bail!("--arc T S is required for exact-ie"),
        _ => None,
    };
    let (out, ms) = timed(g, || -> Result<(bool, Option<String>, exactexpo::Counters)> {
        Ok(match a.algo {
            HamAlgo::Cuts2n => {
                let o = hamiltonicity::undirected_ham_2n(&graph, seed, &cfg)?;
                (o.decision, None, o.counters)
            }
            HamAlgo::Narrow => {
                let fam = family.as_ref().expect("family resolved above");
                let o = hamiltonicity::narrow_cut_hamiltonicity(&graph, fam, seed, &cfg, graph.is_directed())?;
                (o.decision, None, o.counters)
            }
            HamAlgo::CountModP => {
                let o = hamiltonicity::count_ham_cycles_mod_p(&graph, a.p, seed, &ModPConfig::default())?;
                (o.residue != 0, Some(o.residue.to_string()), o.counters)
            }
            HamAlgo::ExactIe => {
                let (t, s) = arc.expect("arc resolved above");
                let (c, counters) = hamiltonicity::ham_cycles_through_arc_exact(&graph, t, s)?;
                (c > 0.into(), Some(c.to_string()), counters)
            }
            HamAlgo::Brute => {
                let c = oracles::ham_count(&graph, &OracleBudget::default())?;
                (c > 0, Some(c.to_string()), Default::default())
            }
        })
    });
    let (decision, count, counters) = out?;
    let mut r = RunResult::new("ham", name, &graph.render(), g.seed);
    r.decision = Some(decision);
    r.count = count;
    r.counters(&counters);
    r.elapsed_ms = ms;
    r.emit()
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum SubsetSumAlgo {
    Mitm,
    Rep,
    Brute,
}

#[derive(Args, Debug)]
pub struct SubsetSumArgs {
    #[arg(long, value_enum)]
    algo: SubsetSumAlgo,
    /// Repetitions (rep).
    #[arg(long, default_value_t = 20)]
    budget: usize,
    /// Add pseudo-solution and subset-sum statistics.
    #[arg(long)]
    diagnostics: bool,
    file: PathBuf,
}

pub fn subsetsum(a: &SubsetSumArgs, g: &Global) -> Result<bool> {
    let inst = WeightedInstance::parse(&read(&a.file)?).context("parsing weighted instance")?;
    inst.target().context("subsetsum needs a target")?;
    let seed = Seed(g.seed);
    let name = match a.algo {
        SubsetSumAlgo::Mitm => "mitm",
        SubsetSumAlgo::Rep => "rep",
        SubsetSumAlgo::Brute => "brute",
    };
    let (out, ms) = timed(g, || -> Result<subsetsum::SubsetSumOutcome> {
        Ok(match a.algo {
            SubsetSumAlgo::Mitm => subsetsum::meet_in_middle(&inst)?,
            SubsetSumAlgo::Rep => subsetsum::representation_method(&inst, seed, a.budget)?,
            SubsetSumAlgo::Brute => subsetsum::SubsetSumOutcome {
                witness: oracles::subset_sum(&inst, &OracleBudget::default())?,
                counters: Default::default(),
            },
        })
    });
    let out = out?;
    let mut r = RunResult::new("subsetsum", name, &inst.render(), g.seed);
    r.decision = Some(out.witness.is_some());
    r.witness = out.witness.map(one_based);
    r.counters(&out.counters);
    r.elapsed_ms = ms;
    if a.diagnostics {
        let d = subsetsum::diagnostics(&inst)?;
        r.diagnostics = Some(json!({
            "pseudo_solutions": d.pseudo_solutions.to_string(),
            "distinct_subset_sums": d.distinct_subset_sums,
            "max_frequency": d.max_frequency,
        }));
    }
    r.emit()
}

#[derive(Args, Debug)]
pub struct SparsifyArgs {
    /// Largest set size the schedule is built for.
    #[arg(long)]
    k: usize,
    #[arg(long)]
    eps: f64,
    /// Overrides the default flower threshold scale.
    #[arg(long)]
    alpha: Option<u64>,
    /// Directory for the output systems and report.json.
    #[arg(long)]
    out: PathBuf,
    file: PathBuf,
}

pub const REPORT_FILE: &str = "report.json";

pub fn output_name(i: usize) -> String {
    format!("out-{:04}.sets", i + 1)
}

pub fn sparsifier_config(k: usize, eps: f64, alpha: Option<u64>) -> Result<SparsifierConfig> {
    Ok(match alpha {
        Some(al) => SparsifierConfig::with_alpha(k, eps, al)?,
        None => SparsifierConfig::new(k, eps)?,
    })
}

pub fn sparsify(a: &SparsifyArgs, g: &Global) -> Result<bool> {
    let family = SetSystem::parse(&read(&a.file)?).context("parsing set system")?;
    let config = sparsifier_config(a.k, a.eps, a.alpha)?;
    let (out, ms) = timed(g, || sparsifier::reduce(&family, &config));
    let red = out?;
    std::fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    for (i, o) in red.outputs.iter().enumerate() {
        let path = a.out.join(output_name(i));
        std::fs::write(&path, o.render()).with_context(|| format!("writing {}", path.display()))?;
    }
    let max_f = red.outputs.iter().map(sparsifier::max_frequency).max().unwrap_or(0);
    let report = json!({
        "outputs": red.outputs.len(),
        "max_frequency": max_f,
        "parameters": { "k": config.k, "epsilon": config.epsilon, "alpha": config.alpha },
        "degree_bound": config.frequency_bound(),
        "output_bound": config.output_bound(family.n()),
        "sigma_violations": red.sigma_violations,
    });
    let path = a.out.join(REPORT_FILE);
    std::fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    let mut r = RunResult::new("sparsify", "reduce", &family.render(), g.seed);
    r.count = Some(red.outputs.len().to_string());
    r.counters(&red.counters);
    r.elapsed_ms = ms;
    r.emit()
}
