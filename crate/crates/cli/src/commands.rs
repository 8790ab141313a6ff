use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use qsr_core::config::ExperimentConfig;
use qsr_core::experiment::suites::{run_suite, Suite, SuiteConfig};
use qsr_core::experiment::{detect_sr, find_optimal_noise, run_sweep, ModelSpec, OptimizeSpec};
use qsr_core::info::estimate_mi;
use qsr_core::noise::{ChannelNoise, Spread};
use qsr_core::rng::substream;
use qsr_core::{basic_interval, cvqkd_interval, BasicModelParams, CvqkdParams, StableParams};

use crate::output::{sidecar_path, write_atomically};
use crate::{ChannelKind, Cli, Command, IntervalArgs, ModelKind, OptimizeArgs, VerifyArgs};

pub const EXIT_NOT_PREDICTED: u8 = 2;
pub const EXIT_BOUNDARY: u8 = 3;
pub const EXIT_SUITE_FAILED: u8 = 4;

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Simulate => simulate(cli),
        Command::Sweep => sweep(cli),
        Command::Interval(args) => interval(args),
        Command::Verify(args) => verify(cli, args),
        Command::Optimize(args) => optimize(cli, args),
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| anyhow!("--config is required"))?;
    let config = ExperimentConfig::load(path)?;
    Ok(match cli.seed {
        Some(seed) => config.with_seed(seed),
        None => config,
    })
}

fn emit(cli: &Cli, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    match &cli.output {
        Some(path) => write_atomically(&[(path.as_path(), text.as_bytes())]),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn simulate(cli: &Cli) -> Result<u8> {
    let config = load_config(cli)?;
    let spec = config
        .simulate
        .ok_or_else(|| anyhow!("config has no `simulate` section"))?;
    let counts = config
        .model
        .simulator()?
        .simulate(spec.trials, &mut substream(spec.seed, 0));
    let rows: Vec<&[u64]> = counts.counts().chunks(counts.cols()).collect();
    emit(
        cli,
        &json!({
            "model": config.model,
            "trials": spec.trials,
            "seed": spec.seed,
            "counts": rows,
            "mi_estimate": estimate_mi(&counts)?,
            "mi_analytic": config.model.analytic_mi().ok(),
            "verdict": config.model.verdict(),
        }),
    )?;
    Ok(0)
}

fn sweep(cli: &Cli) -> Result<u8> {
    let config = load_config(cli)?;
    let output = cli
        .output
        .as_ref()
        .ok_or_else(|| anyhow!("--output is required"))?;
    let spec = config
        .sweep
        .as_ref()
        .ok_or_else(|| anyhow!("config has no `sweep` section"))?;
    let mut result = run_sweep(spec, &config.model)?;
    result.stamp();
    let provenance = serde_json::to_string_pretty(&result.provenance)? + "\n";
    let sidecar = sidecar_path(output);
    write_atomically(&[
        (output.as_path(), result.to_csv().as_bytes()),
        (sidecar.as_path(), provenance.as_bytes()),
    ])?;

    let peak = result.argmax();
    let top = result.r_values.len() - 1;
    let (mi, se) = result.profile(top);
    let sr = detect_sr(&mi, &se).ok();
    println!(
        "{}",
        json!({
            "output": output,
            "cells": result.cells.len(),
            "peak_mi": peak.mi_mean,
            "peak_noise": peak.noise,
            "peak_r": peak.r,
            "sr_profile_r": result.r_values[top],
            "sr_detected": sr.as_ref().map(|r| r.detected()),
            "sr_class": sr.map(|r| r.class),
            "sr_predicted": config.model.verdict().sr_predicted,
        })
    );
    Ok(0)
}

fn interval(args: &IntervalArgs) -> Result<u8> {
    for (name, v) in [
        ("alpha", args.alpha),
        ("theta", args.theta),
        ("location", args.location),
    ] {
        if !v.is_finite() {
            bail!("--{name} must be finite");
        }
    }
    if args.alpha < 0.0 {
        bail!("--alpha must be >= 0");
    }
    let intervals = match args.model {
        ModelKind::Basic => basic_interval(args.alpha, args.theta),
        ModelKind::Cvqkd => cvqkd_interval(args.alpha, args.theta),
    };
    let verdict = intervals.verdict(args.location);
    println!("{}", serde_json::to_string(&verdict)?);
    Ok(if verdict.boundary_flag {
        EXIT_BOUNDARY
    } else if verdict.sr_predicted {
        0
    } else {
        EXIT_NOT_PREDICTED
    })
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<u8> {
    let suite: Suite = args.suite.parse().map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        anyhow!(
            "unknown suite `{}`\n\nUsage: qsr verify <SUITE>\n  suites: {}",
            args.suite,
            names.join(", ")
        )
    })?;
    let config = SuiteConfig {
        sets_per_case: args.sets,
        trials: args.trials,
        seed: cli.seed.unwrap_or(SuiteConfig::default().seed),
    };
    let report = run_suite(suite, &config)?;
    emit(cli, &report)?;
    if let Some(f) = report.first_failure() {
        eprintln!(
            "{} failed ({} of {} checks); first falsifying set: {} / {:?}: {}\n{}",
            suite,
            report.failures.len(),
            report.checks,
            f.case,
            f.family,
            f.detail,
            serde_json::to_string(&f.model)?
        );
        return Ok(EXIT_SUITE_FAILED);
    }
    Ok(0)
}

fn optimize(cli: &Cli, a: &OptimizeArgs) -> Result<u8> {
    // The starting spread is a placeholder; the search sets it.
    let (channel, spread) = match a.channel {
        ChannelKind::Gaussian => (ChannelNoise::gaussian(a.location, 1.0)?, Spread::Std),
        ChannelKind::Uniform => (ChannelNoise::uniform(a.location, 1.0)?, Spread::Std),
        ChannelKind::Exponential => (
            ChannelNoise::shifted_exponential(a.location, 1.0)?,
            Spread::Std,
        ),
        ChannelKind::Cauchy => (ChannelNoise::cauchy(a.location, 1.0)?, Spread::Dispersion),
        ChannelKind::Stable => (
            ChannelNoise::Stable(StableParams::new(a.stable_alpha, a.beta, 1.0, a.location)?),
            Spread::Dispersion,
        ),
    };
    let model = match a.model {
        ModelKind::Basic => ModelSpec::Basic(BasicModelParams {
            alpha_x: a.alpha,
            theta: a.theta,
            r: a.r,
            eta: a.eta,
            channel,
            p_s1: 0.5,
        }),
        ModelKind::Cvqkd => ModelSpec::Cvqkd(CvqkdParams {
            alpha: a.alpha,
            theta: a.theta,
            r: a.r,
            gain: a.gain,
            eta_e: a.eta_e,
            eta_b: a.eta_b,
            channel,
            p_s1: 0.5,
        }),
    };
    let spec = OptimizeSpec {
        spread,
        lower: a.lower,
        upper: a.upper,
        budget: a.budget,
        tolerance: a.tolerance,
        seed: cli.seed.unwrap_or(0),
        coarse_points: a.coarse_points,
    };
    let result = find_optimal_noise(&model, &spec).context("noise search failed")?;
    if let Some(w) = &result.warning {
        eprintln!("warning: {w}");
    }
    emit(cli, &json!({ "spread": spread, "result": result }))?;
    Ok(0)
}
