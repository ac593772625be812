mod bench;
mod output;
mod solve;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "exactexpo", version, about = "Exact exponential-time algorithms for NP-hard problems")]
struct Cli {
    /// Base seed; per-trial seeds are derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Report elapsed time as null (JSON) or 0 (CSV) so output is reproducible.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Satisfiability of a DIMACS CNF file.
    Sat(solve::SatArgs),
    /// Graph k-coloring.
    Color(solve::ColorArgs),
    /// Set cover with k sets.
    Setcover(solve::SetCoverArgs),
    /// Bin packing into k bins of capacity c.
    Binpack(solve::BinPackArgs),
    /// Hamiltonian cycles.
    Ham(solve::HamArgs),
    /// Subset sum.
    Subsetsum(solve::SubsetSumArgs),
    /// Sparsify a set system into families of bounded element frequency.
    Sparsify(solve::SparsifyArgs),
    /// Counter sweep over generated instances, as CSV.
    Bench(bench::BenchArgs),
    /// Check algebraic identities and solver outputs.
    Verify(verify::VerifyArgs),
}

pub struct Global {
    pub seed: u64,
    pub timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = Global {
        seed: cli.seed,
        timing: !cli.no_timing,
    };
    let result = match cli.command {
        Command::Sat(a) => solve::sat(&a, &global),
        Command::Color(a) => solve::color(&a, &global),
        Command::Setcover(a) => solve::setcover(&a, &global),
        Command::Binpack(a) => solve::binpack(&a, &global),
        Command::Ham(a) => solve::ham(&a, &global),
        Command::Subsetsum(a) => solve::subsetsum(&a, &global),
        Command::Sparsify(a) => solve::sparsify(&a, &global),
        Command::Bench(a) => bench::run(&a, &global),
        Command::Verify(a) => verify::run(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
