//! `pgfit`: Polya-Gamma variate generation, Gibbs-sampler model fitting
//! from CSV, and benchmarks.
//!
//! Exit codes: 0 success, 2 usage or schema error, 3 numerical failure.

// Validations use `!(x > 0)` comparisons on purpose: they reject NaN
// along with out-of-domain values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod bench;
mod error;
mod fit;
mod input;
mod output;
mod sample;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "pgfit",
    version,
    about = "Polya-Gamma sampling and data-augmented Gibbs samplers for binomial models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw random variates, one per line
    Sample(SampleArgs),
    /// Fit a model to a CSV dataset
    Fit(FitArgs),
    /// Run a benchmark suite
    Bench(BenchArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum Dist {
    /// Polya-Gamma PG(b, z)
    Pg,
}

#[derive(Args)]
struct SampleArgs {
    /// Distribution family
    dist: Dist,
    /// Shape parameter b > 0
    #[arg(short = 'b', long)]
    shape: f64,
    /// Tilt parameter z
    #[arg(
        short = 'z',
        long,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    tilt: f64,
    /// Number of draws
    #[arg(short = 'n', long)]
    count: usize,
    /// RNG seed
    #[arg(long, env = "PGFIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Output path (one draw per line)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, ValueEnum, Debug)]
enum ModelKind {
    Logit,
    Mixed,
    Negbin,
    Mlogit,
    Tables,
    GpNegbin,
}

impl ModelKind {
    fn name(self) -> &'static str {
        match self {
            ModelKind::Logit => "logit",
            ModelKind::Mixed => "mixed",
            ModelKind::Negbin => "negbin",
            ModelKind::Mlogit => "mlogit",
            ModelKind::Tables => "tables",
            ModelKind::GpNegbin => "gp-negbin",
        }
    }
}

#[derive(Args)]
struct FitArgs {
    /// Model family
    model: ModelKind,
    /// Input CSV path (header required; see README for the schemas)
    #[arg(long)]
    data: PathBuf,
    /// Output prefix: writes `<prefix>_draws.csv` and `<prefix>_summary.json`
    #[arg(long)]
    out: PathBuf,
    /// Retained post-burn-in samples
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Burn-in iterations
    #[arg(long, default_value_t = 2_000)]
    burn: usize,
    /// Keep every k-th post-burn-in draw
    #[arg(long, default_value_t = 1)]
    thin: usize,
    /// RNG seed
    #[arg(long, env = "PGFIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Prior variance: coefficients get a N(0, scale * I) prior
    #[arg(long, default_value_t = 100.0)]
    prior_scale: f64,
    /// Do not prepend the automatic intercept column
    #[arg(long)]
    no_intercept: bool,
    /// negbin: initial over-dispersion (integer >= 1)
    #[arg(long, default_value_t = 1)]
    dispersion_init: u64,
    /// negbin: keep the dispersion fixed instead of sampling it
    #[arg(long)]
    fix_dispersion: bool,
    /// gp-negbin: kernel length scale
    #[arg(long, default_value_t = 0.1)]
    length_scale: f64,
    /// gp-negbin: kernel nugget
    #[arg(long, default_value_t = 0.0)]
    nugget: f64,
    /// gp-negbin: negative-binomial size parameter
    #[arg(long, default_value_t = 1)]
    nb_size: u64,
    /// tables: inverse-Wishart degrees of freedom
    #[arg(long, default_value_t = 4.0)]
    wishart_dof: f64,
    /// tables: prior expected variance of the first arm's log-odds
    #[arg(long, default_value_t = 1.0)]
    expected_var1: f64,
    /// tables: prior expected variance of the second arm's log-odds
    #[arg(long, default_value_t = 1.0)]
    expected_var2: f64,
    /// tables: prior expected correlation between the arms
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    expected_rho: f64,
    /// tables: precision scale of the mu prior
    #[arg(long, default_value_t = 0.01)]
    mu_scale: f64,
    /// Run this many chains concurrently with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    chains: usize,
}

#[derive(Copy, Clone, ValueEnum)]
enum Suite {
    /// Draws per second for PG(1,1), PG(10,1), PG(100,1)
    PgSpeed,
    /// ESS/ESR table for the bundled logit problem, Gibbs vs Metropolis
    LogitEss,
}

#[derive(Args)]
struct BenchArgs {
    /// Benchmark suite
    suite: Suite,
    /// pg-speed: draws per shape
    #[arg(long, default_value_t = 1_000_000)]
    draws: usize,
    /// logit-ess: retained samples per sampler
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// logit-ess: burn-in iterations
    #[arg(long, default_value_t = 2_000)]
    burn: usize,
    /// RNG seed
    #[arg(long, env = "PGFIT_SEED", default_value_t = 0)]
    seed: u64,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(args) => sample::run(&args),
        Command::Fit(args) => fit::run(&args),
        Command::Bench(args) => bench::run(&args),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code());
    }
}
