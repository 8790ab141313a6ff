//! `qsr`: simulate, sweep, and query the threshold-link models.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qsr",
    version,
    about = "Noise-benefit simulator for squeezed-light threshold links"
)]
struct Cli {
    /// JSON experiment config (required by `simulate` and `sweep`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; `sweep` also writes `<output>.provenance.json`.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Master seed; overrides the config.
    #[arg(long, global = true, env = "QSR_SEED")]
    seed: Option<u64>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    parallelism: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one parameter set and report joint counts and MI.
    Simulate,
    /// Run the configured sweep and write it as CSV.
    Sweep,
    /// Forbidden-interval verdict for a noise location.
    Interval(IntervalArgs),
    /// Run a limit or bound suite.
    Verify(VerifyArgs),
    /// Search for the noise level that maximizes MI.
    Optimize(OptimizeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Basic,
    Cvqkd,
}

#[derive(Args, Debug)]
struct IntervalArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    /// Signal amplitude (`α_x` for the basic model).
    #[arg(long, visible_alias = "alpha-x", allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    theta: f64,
    /// Noise mean or stable location.
    #[arg(long, allow_negative_numbers = true)]
    location: f64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// One of theorem1-finite, theorem1-stable, theorem2-finite,
    /// theorem2-stable, chebyshev.
    suite: String,
    /// Randomized parameter sets per case.
    #[arg(long, default_value_t = 20)]
    sets: usize,
    /// Monte Carlo trials per evaluation.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ChannelKind {
    Gaussian,
    Uniform,
    Exponential,
    Cauchy,
    Stable,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    #[arg(long, visible_alias = "alpha-x")]
    alpha: f64,
    #[arg(long)]
    theta: f64,
    #[arg(long, default_value_t = 0.0)]
    r: f64,
    /// Detector efficiency (basic model).
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    #[arg(long, default_value_t = 1.0)]
    gain: f64,
    #[arg(long, default_value_t = 1.0)]
    eta_e: f64,
    #[arg(long, default_value_t = 1.0)]
    eta_b: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    location: f64,
    #[arg(long, value_enum, default_value = "gaussian")]
    channel: ChannelKind,
    /// Characteristic exponent for `--channel stable`.
    #[arg(long, default_value_t = 1.5)]
    stable_alpha: f64,
    /// Skewness for `--channel stable`.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long)]
    lower: f64,
    #[arg(long)]
    upper: f64,
    /// Total trial budget across all evaluations.
    #[arg(long, default_value_t = 20_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 0.01)]
    tolerance: f64,
    #[arg(long, default_value_t = 12)]
    coarse_points: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.parallelism {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
