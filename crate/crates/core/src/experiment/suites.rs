//! Limit suites: drive every noise source toward its vanishing stand-in and
//! check the forbidden-interval predictions on randomized parameter sets.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ModelSpec;
use crate::basic::BasicModelParams;
use crate::chebyshev::{basic_bounds, cvqkd_bounds};
use crate::cvqkd::{CvqkdParams, TernaryOutcome};
use crate::error::{Error, Result};
use crate::info::{binary_entropy, estimate_mi};
use crate::interval::{theorem2_constraints, LocationCase};
use crate::noise::ChannelNoise;
use crate::rng::substream;
use crate::stable::StableParams;

/// Stand-ins for the vanishing-noise limit.
pub const LIMIT_LEVEL: f64 = 1e-4;
pub const LIMIT_R: f64 = 5.0;
pub const LIMIT_EFFICIENCY: f64 = 0.999;
pub const LIMIT_GAIN: f64 = 1.001;

/// Outside the intervals the final MI must fall below this.
pub const OUTSIDE_MAX_BITS: f64 = 0.02;
/// Inside, the final MI must exceed this fraction of `H(S)`.
pub const INSIDE_MIN_FRACTION: f64 = 0.9;
/// Predicted degenerate transition probabilities must exceed this.
pub const DEGENERATE_MIN_PROB: f64 = 0.97;

const STEPS: usize = 5;
const START_LEVEL: f64 = 0.5;
const MARGIN: f64 = 0.25;
const SPAN: f64 = 2.25;
/// Slack for Monte Carlo jitter when checking that MI is decreasing.
const MONOTONE_SLACK: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Theorem1Finite,
    Theorem1Stable,
    Theorem2Finite,
    Theorem2Stable,
    Chebyshev,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Theorem1Finite,
        Suite::Theorem1Stable,
        Suite::Theorem2Finite,
        Suite::Theorem2Stable,
        Suite::Chebyshev,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1Finite => "theorem1-finite",
            Suite::Theorem1Stable => "theorem1-stable",
            Suite::Theorem2Finite => "theorem2-finite",
            Suite::Theorem2Stable => "theorem2-stable",
            Suite::Chebyshev => "chebyshev",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// Channel-noise families exercised by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gaussian,
    Uniform,
    ShiftedExponential,
    Cauchy,
    /// `α = 1.5` with a random skew.
    Stable15,
}

impl Family {
    pub const FINITE: [Family; 3] = [
        Family::Gaussian,
        Family::Uniform,
        Family::ShiftedExponential,
    ];
    pub const STABLE: [Family; 2] = [Family::Cauchy, Family::Stable15];

    /// `level` is the standard deviation for finite-variance families and
    /// the dispersion otherwise.
    pub fn channel(self, location: f64, level: f64, beta: f64) -> Result<ChannelNoise> {
        match self {
            Family::Gaussian => ChannelNoise::gaussian(location, level),
            Family::Uniform => ChannelNoise::uniform(location, level),
            Family::ShiftedExponential => ChannelNoise::shifted_exponential(location, level),
            Family::Cauchy => ChannelNoise::cauchy(location, level),
            Family::Stable15 => Ok(ChannelNoise::Stable(StableParams::new(
                1.5, beta, level, location,
            )?)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub sets_per_case: usize,
    /// Monte Carlo trials per evaluation.
    pub trials: u64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            sets_per_case: 20,
            trials: 100_000,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Falsification {
    pub case: String,
    pub family: Family,
    pub model: ModelSpec,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<Falsification>,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&Falsification> {
        self.failures.first()
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let outcomes = match suite {
        Suite::Theorem1Finite => theorem1(&Family::FINITE, config)?,
        Suite::Theorem1Stable => theorem1(&Family::STABLE, config)?,
        Suite::Theorem2Finite => theorem2(&Family::FINITE, config)?,
        Suite::Theorem2Stable => theorem2(&Family::STABLE, config)?,
        Suite::Chebyshev => chebyshev()?,
    };
    let checks = outcomes.iter().map(|o| o.0).sum();
    let failures: Vec<Falsification> = outcomes.into_iter().flat_map(|o| o.1).collect();
    Ok(SuiteReport {
        suite,
        passed: failures.is_empty(),
        checks,
        failures,
    })
}

type Outcome = (usize, Vec<Falsification>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BasicCase {
    Below,
    Above,
    Inside,
}

impl BasicCase {
    const ALL: [BasicCase; 3] = [BasicCase::Below, BasicCase::Above, BasicCase::Inside];

    fn name(self) -> &'static str {
        match self {
            BasicCase::Below => "mean below interval",
            BasicCase::Above => "mean above interval",
            BasicCase::Inside => "mean inside interval",
        }
    }
}

const CV_CASES: [LocationCase; 5] = [
    LocationCase::BelowBoth,
    LocationCase::Between,
    LocationCase::AboveBoth,
    LocationCase::InNegative,
    LocationCase::InPositive,
];

fn cv_case_name(case: LocationCase) -> &'static str {
    match case {
        LocationCase::BelowBoth => "location below both intervals",
        LocationCase::Between => "location between intervals",
        LocationCase::AboveBoth => "location above both intervals",
        LocationCase::InNegative => "location in negative interval",
        LocationCase::InPositive => "location in positive interval",
    }
}

/// Noise level, squeezing, efficiency and amplifier gain at step `j`.
fn schedule(j: usize) -> (f64, f64, f64, f64) {
    let t = j as f64 / (STEPS - 1) as f64;
    let level = if j + 1 == STEPS {
        LIMIT_LEVEL
    } else {
        START_LEVEL * (LIMIT_LEVEL / START_LEVEL).powf(t)
    };
    let eff = if j + 1 == STEPS {
        LIMIT_EFFICIENCY
    } else {
        0.9 + (LIMIT_EFFICIENCY - 0.9) * t
    };
    let gain = if j + 1 == STEPS {
        LIMIT_GAIN
    } else {
        1.2 + (LIMIT_GAIN - 1.2) * t
    };
    (level, LIMIT_R * t, eff, gain)
}

fn task_seed(family: usize, case: usize, set: usize) -> u64 {
    ((family * 16 + case) * 10_000 + set) as u64
}

/// Checks a decreasing-noise MI sequence against the prediction.
fn judge_sequence(mi: &[f64], predicted_sr: bool, h_s: f64) -> Option<String> {
    let last = mi[mi.len() - 1];
    if predicted_sr {
        if last >= OUTSIDE_MAX_BITS {
            return Some(format!(
                "final MI {last:.5} bits not below {OUTSIDE_MAX_BITS}"
            ));
        }
        let n = mi.len();
        if mi[n - 1] > mi[n - 2] + MONOTONE_SLACK || mi[n - 2] > mi[n - 3] + MONOTONE_SLACK {
            return Some(format!("MI not eventually decreasing: {mi:?}"));
        }
    } else if last <= INSIDE_MIN_FRACTION * h_s {
        return Some(format!(
            "final MI {last:.5} bits not above {:.3}",
            INSIDE_MIN_FRACTION * h_s
        ));
    }
    None
}

fn theorem1(families: &[Family], config: &SuiteConfig) -> Result<Vec<Outcome>> {
    let mut tasks = Vec::new();
    for (fi, &family) in families.iter().enumerate() {
        for (ci, &case) in BasicCase::ALL.iter().enumerate() {
            for set in 0..config.sets_per_case {
                tasks.push((fi, family, ci, case, set));
            }
        }
    }
    tasks
        .into_par_iter()
        .map(|(fi, family, ci, case, set)| {
            let mut rng = substream(config.seed, task_seed(fi, ci, set));
            let alpha_x = rng.random_range(0.5..1.5);
            let theta = alpha_x + rng.random_range(0.3..1.0);
            let beta = rng.random_range(-0.5..0.5);
            let mu = match case {
                BasicCase::Below => theta - alpha_x - MARGIN - rng.random_range(0.0..SPAN),
                BasicCase::Above => theta + alpha_x + MARGIN + rng.random_range(0.0..SPAN),
                BasicCase::Inside => {
                    rng.random_range(theta - alpha_x + MARGIN..theta + alpha_x - MARGIN)
                }
            };
            let mut mi = Vec::with_capacity(STEPS);
            let mut model = None;
            for j in 0..STEPS {
                let (level, r, eta, _) = schedule(j);
                let spec = ModelSpec::Basic(BasicModelParams {
                    alpha_x,
                    theta,
                    r,
                    eta,
                    channel: family.channel(mu, level, beta)?,
                    p_s1: 0.5,
                });
                mi.push(spec.simulator()?.estimate_mi(config.trials, &mut rng)?);
                model = Some(spec);
            }
            let model = model.expect("at least one step");
            let failures = judge_sequence(&mi, case != BasicCase::Inside, binary_entropy(0.5))
                .map(|detail| Falsification {
                    case: case.name().into(),
                    family,
                    model,
                    detail,
                })
                .into_iter()
                .collect();
            Ok((1, failures))
        })
        .collect()
}

fn draw_location<R: Rng>(case: LocationCase, alpha: f64, theta: f64, rng: &mut R) -> f64 {
    let gap = theta - alpha;
    match case {
        LocationCase::BelowBoth => -theta - alpha - MARGIN - rng.random_range(0.0..SPAN),
        LocationCase::Between => rng.random_range(-gap + MARGIN..gap - MARGIN),
        LocationCase::AboveBoth => theta + alpha + MARGIN + rng.random_range(0.0..SPAN),
        LocationCase::InNegative => rng.random_range(-theta - alpha + MARGIN..-gap - MARGIN),
        LocationCase::InPositive => rng.random_range(gap + MARGIN..theta + alpha - MARGIN),
    }
}

/// `(s, y)` pairs the degenerate limit channel sends to probability one.
fn degenerate_targets(case: LocationCase) -> &'static [(usize, TernaryOutcome)] {
    match case {
        LocationCase::InNegative => &[(0, TernaryOutcome::Zero), (1, TernaryOutcome::Inconclusive)],
        LocationCase::InPositive => &[(1, TernaryOutcome::One), (0, TernaryOutcome::Inconclusive)],
        _ => &[],
    }
}

fn theorem2(families: &[Family], config: &SuiteConfig) -> Result<Vec<Outcome>> {
    let mut tasks = Vec::new();
    for (fi, &family) in families.iter().enumerate() {
        for (ci, &case) in CV_CASES.iter().enumerate() {
            for set in 0..config.sets_per_case {
                tasks.push((fi, family, ci, case, set));
            }
        }
    }
    tasks
        .into_par_iter()
        .map(|(fi, family, ci, case, set)| {
            let mut rng = substream(config.seed, task_seed(fi, 8 + ci, set));
            let alpha = rng.random_range(0.5..1.5);
            let theta = alpha + rng.random_range(0.4..1.0);
            let beta = rng.random_range(-0.5..0.5);
            let mu = draw_location(case, alpha, theta, &mut rng);
            let mut mi = Vec::with_capacity(STEPS);
            let mut last = None;
            for j in 0..STEPS {
                let (level, r, eff, gain) = schedule(j);
                let params = CvqkdParams {
                    alpha,
                    theta,
                    r,
                    gain,
                    eta_e: eff,
                    eta_b: eff,
                    channel: family.channel(mu, level, beta)?,
                    p_s1: 0.5,
                };
                let counts = ModelSpec::Cvqkd(params)
                    .simulator()?
                    .simulate(config.trials, &mut rng);
                mi.push(estimate_mi(&counts)?);
                last = Some((params, counts));
            }
            let (params, counts) = last.expect("at least one step");
            let fail = |detail: String| Falsification {
                case: cv_case_name(case).into(),
                family,
                model: ModelSpec::Cvqkd(params),
                detail,
            };
            let mut failures = Vec::new();
            let mut checks = 1;
            let k = params.gain_product();
            match theorem2_constraints(&params, mu) {
                Ok(c) if c.case == case && c.admits(k) => {}
                Ok(c) => failures.push(fail(format!(
                    "gain product {k} outside admissible range {:?} for {:?}",
                    c.admissible(),
                    c.case
                ))),
                Err(e) => failures.push(fail(e.to_string())),
            }
            if let Some(detail) = judge_sequence(&mi, case.sr_predicted(), binary_entropy(0.5)) {
                failures.push(fail(detail));
            }
            let freq = counts.conditional_frequencies();
            for &(s, y) in degenerate_targets(case) {
                checks += 1;
                let p = freq[s * 3 + y.index()];
                if p <= DEGENERATE_MIN_PROB {
                    failures.push(fail(format!(
                        "p({y:?}|{s}) = {p:.5} not above {DEGENERATE_MIN_PROB}"
                    )));
                }
            }
            Ok((checks, failures))
        })
        .collect()
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

/// Analytic probabilities against `σ²/ε²` over a 10 × 10 (location, spread)
/// grid per case and finite-variance family.
fn chebyshev() -> Result<Vec<Outcome>> {
    let (alpha, theta) = (1.1, 1.6);
    let (lo, hi) = (theta - alpha, theta + alpha);
    let basic_ranges = [
        (BasicCase::Below.name(), lo - 3.0, lo - 0.05),
        (BasicCase::Above.name(), hi + 0.05, hi + 3.0),
        (BasicCase::Inside.name(), lo + 0.05, hi - 0.05),
    ];
    let cv_ranges = [
        (cv_case_name(LocationCase::BelowBoth), -hi - 3.0, -hi - 0.05),
        (cv_case_name(LocationCase::Between), -lo + 0.05, lo - 0.05),
        (cv_case_name(LocationCase::AboveBoth), hi + 0.05, hi + 3.0),
        (
            cv_case_name(LocationCase::InNegative),
            -hi + 0.05,
            -lo - 0.05,
        ),
        (cv_case_name(LocationCase::InPositive), lo + 0.05, hi - 0.05),
    ];
    let mut tasks = Vec::new();
    for family in Family::FINITE {
        for &(name, a, b) in &basic_ranges {
            for mu in grid(a, b, 10) {
                for std in grid(0.05, 1.0, 10) {
                    let model = ModelSpec::Basic(BasicModelParams {
                        alpha_x: alpha,
                        theta,
                        r: 1.0,
                        eta: 0.9,
                        channel: family.channel(mu, std, 0.0)?,
                        p_s1: 0.5,
                    });
                    tasks.push((name, family, model));
                }
            }
        }
        for &(name, a, b) in &cv_ranges {
            for mu in grid(a, b, 10) {
                for std in grid(0.05, 1.0, 10) {
                    let model = ModelSpec::Cvqkd(CvqkdParams {
                        alpha,
                        theta,
                        r: 1.0,
                        gain: 1.05,
                        eta_e: 0.95,
                        eta_b: 0.9,
                        channel: family.channel(mu, std, 0.0)?,
                        p_s1: 0.5,
                    });
                    tasks.push((name, family, model));
                }
            }
        }
    }
    tasks
        .into_par_iter()
        .map(|(name, family, model)| {
            let bounds = match &model {
                ModelSpec::Basic(p) => basic_bounds(p)?,
                ModelSpec::Cvqkd(p) => cvqkd_bounds(p)?,
            };
            let failures = bounds
                .iter()
                .filter(|b| !b.holds())
                .map(|b| Falsification {
                    case: name.into(),
                    family,
                    model,
                    detail: format!(
                        "{} = {:.6} exceeds bound {:.6} (eps = {:.4})",
                        b.claim, b.observed, b.bound, b.epsilon
                    ),
                })
                .collect();
            Ok((bounds.len(), failures))
        })
        .collect()
}
