use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use exactexpo::hamiltonicity::{self, H2Convention, NarrowCutFamily};
use exactexpo::{coloring, sparsifier, Error, Multigraph, SetSystem};
use serde_json::{json, Value};

use crate::output::{one_based, read};
use crate::solve::{sparsifier_config, REPORT_FILE};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(subcommand)]
    target: Target,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Convention {
    /// The double edge on two vertices is a Hamiltonian cycle.
    Cycle,
    NotCycle,
}

impl From<Convention> for H2Convention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Cycle => H2Convention::DoubleEdgeIsCycle,
            Convention::NotCycle => H2Convention::DoubleEdgeIsNotCycle,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Target {
    /// H_t = S_t S_t^T over GF(2).
    Factorization {
        #[arg(long)]
        t: usize,
        /// Convention that decides the exit status; both are reported.
        #[arg(long, value_enum, default_value_t = Convention::Cycle)]
        convention: Convention,
    },
    /// The narrow-cut factorization for a cut family.
    Narrow {
        #[arg(long)]
        t: usize,
        /// Cut family file; built-in families exist for t = 4 and 6.
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Convention::Cycle)]
        convention: Convention,
    },
    /// Sparsifier outputs against their input family.
    Sparsify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        outputs: PathBuf,
        /// Defaults to the value in the outputs' report.json.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Every maximal independent set of a graph lies in some container.
    Containers {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        containers: PathBuf,
    },
}

fn report(kind: &str, pass: bool, detail: Value) -> Result<bool> {
    let doc = json!({ "schema_version": crate::output::SCHEMA_VERSION, "verify": kind, "pass": pass, "detail": detail });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(pass)
}

fn factorization_json(r: &hamiltonicity::FactorizationReport) -> Value {
    json!({
        "t": r.t,
        "convention": format!("{:?}", r.convention),
        "width": r.width,
        "equal": r.equal,
        "first_mismatch": r.first_mismatch.map(|(i, j)| [i, j]),
    })
}

pub fn run(a: &VerifyArgs) -> Result<bool> {
    match &a.target {
        Target::Factorization { t, convention } => {
            let chosen: H2Convention = (*convention).into();
            let mut pass = false;
            let mut all = Vec::new();
            for conv in [H2Convention::DoubleEdgeIsCycle, H2Convention::DoubleEdgeIsNotCycle] {
                let r = hamiltonicity::verify_factorization_char2(*t, conv)?;
                if conv == chosen {
                    pass = r.equal;
                }
                all.push(factorization_json(&r));
            }
            report("factorization", pass, Value::from(all))
        }
        Target::Narrow { t, family, convention } => {
            let cuts = match family {
                Some(path) => {
                    let f = NarrowCutFamily::parse(&read(path)?).context("parsing cut family")?;
                    if f.t != *t {
                        bail!("family is for t = {}, not {t}", f.t);
                    }
                    f.cuts
                }
                None => hamiltonicity::known_narrow_cut_family(*t)
                    .with_context(|| format!("no built-in cut family for t = {t}; pass --family"))?,
            };
            let r = hamiltonicity::verify_narrow_cut_factorization(*t, &cuts, (*convention).into())?;
            report("narrow", r.equal, factorization_json(&r))
        }
        Target::Sparsify {
            input,
            outputs,
            k,
            eps,
            alpha,
        } => verify_sparsify(input, outputs, *k, *eps, *alpha),
        Target::Containers { graph, containers } => {
            let g = Multigraph::parse(&read(graph)?, false).context("parsing graph")?;
            let c = SetSystem::parse(&read(containers)?).context("parsing containers")?;
            if c.n() != g.n() {
                bail!("containers are over {} elements, the graph has {} vertices", c.n(), g.n());
            }
            match coloring::verify_containers(&g, c.sets()) {
                Ok(()) => report("containers", true, json!({ "containers": c.len() })),
                Err(Error::Precondition(msg)) => report("containers", false, json!({ "containers": c.len(), "error": msg })),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn stored_parameters(dir: &Path) -> Result<Value> {
    let path = dir.join(REPORT_FILE);
    let text = read(&path)?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(v["parameters"].clone())
}

fn verify_sparsify(input: &Path, dir: &Path, k: Option<usize>, eps: Option<f64>, alpha: Option<u64>) -> Result<bool> {
    let family = SetSystem::parse(&read(input)?).context("parsing input family")?;
    let (k, eps, alpha) = match (k, eps) {
        (Some(k), Some(e)) => (k, e, alpha),
        _ => {
            let p = stored_parameters(dir).context("--k and --eps not given")?;
            (
                k.or(p["k"].as_u64().map(|x| x as usize)).context("no k")?,
                eps.or(p["epsilon"].as_f64()).context("no epsilon")?,
                alpha.or(p["alpha"].as_u64()),
            )
        }
    };
    let config = sparsifier_config(k, eps, alpha)?;
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "sets"));
    paths.sort();
    let mut outs = Vec::with_capacity(paths.len());
    for p in &paths {
        let s = SetSystem::parse(&read(p)?).with_context(|| format!("parsing {}", p.display()))?;
        if s.n() != family.n() {
            bail!("{} has universe {}, the input has {}", p.display(), s.n(), family.n());
        }
        outs.push(s);
    }
    let r = sparsifier::verify_sparsifier_output(&family, &outs, &config);
    report(
        "sparsify",
        r.passed(),
        json!({
            "equivalent": r.equivalent,
            "counterexample": r.counterexample.map(one_based),
            "max_frequency": r.max_frequency,
            "degree_bound": r.frequency_bound,
            "frequency_ok": r.frequency_ok,
            "outputs": r.output_count,
            "output_bound": r.output_bound,
            "count_ok": r.count_ok,
        }),
    )
}
