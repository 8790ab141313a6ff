use serde::{Deserialize, Serialize};

use super::smoothing::smooth_grid;
use super::ModelSpec;
use crate::error::{invalid, Error, Result};
use crate::noise::Spread;
use crate::rng::substream;

/// Fewest trials per MI evaluation the search accepts.
pub const MIN_TRIALS_PER_EVAL: u64 = 10_000;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizeSpec {
    pub spread: Spread,
    pub lower: f64,
    pub upper: f64,
    /// Total number of simulated trials across all evaluations.
    pub budget: u64,
    /// Final bracket width of the golden-section stage.
    pub tolerance: f64,
    pub seed: u64,
    pub coarse_points: usize,
}

impl OptimizeSpec {
    pub fn new(spread: Spread, lower: f64, upper: f64, budget: u64) -> Self {
        OptimizeSpec {
            spread,
            lower,
            upper,
            budget,
            tolerance: 0.01,
            seed: 0,
            coarse_points: 12,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.lower > 0.0 && self.lower < self.upper && self.upper.is_finite()) {
            return Err(invalid(
                "noise bounds",
                format!(
                    "need 0 < lower < upper, got [{}, {}]",
                    self.lower, self.upper
                ),
            ));
        }
        if !(self.tolerance > 0.0) {
            return Err(invalid(
                "tolerance",
                format!("{} must be > 0", self.tolerance),
            ));
        }
        if self.coarse_points < 3 {
            return Err(invalid("coarse_points", "need at least 3"));
        }
        Ok(())
    }

    fn step(&self) -> f64 {
        (self.upper - self.lower) / (self.coarse_points - 1) as f64
    }

    /// Golden-section iterations needed to shrink a two-cell bracket below
    /// the tolerance.
    fn refinement_steps(&self) -> usize {
        let width = 2.0 * self.step();
        if width <= self.tolerance {
            0
        } else {
            ((width / self.tolerance).ln() / (1.0 / INV_PHI).ln()).ceil() as usize
        }
    }

    pub fn evaluations(&self) -> usize {
        self.coarse_points + 2 + self.refinement_steps()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeResult {
    pub noise_level: f64,
    pub mi: f64,
    pub evaluations: usize,
    pub trials_per_eval: u64,
    pub sr_predicted: bool,
    pub warning: Option<String>,
}

/// Coarse scan over `[lower, upper]` followed by golden-section refinement
/// around the best (kernel-smoothed) coarse cell.
///
/// Every evaluation simulates a new batch from the same substream, so nearby
/// noise levels are compared on common random numbers and the objective is
/// a smooth function of the noise level.
pub fn find_optimal_noise(model: &ModelSpec, spec: &OptimizeSpec) -> Result<OptimizeResult> {
    model.validate()?;
    spec.validate()?;
    let evaluations = spec.evaluations();
    let per_eval = spec.budget / evaluations as u64;
    if per_eval < MIN_TRIALS_PER_EVAL {
        return Err(Error::BudgetTooSmall {
            budget: spec.budget,
            needed: MIN_TRIALS_PER_EVAL,
            per_eval,
        });
    }
    let eval = |level: f64| -> Result<f64> {
        let sim = model.with_noise_level(spec.spread, level)?.simulator()?;
        sim.estimate_mi(per_eval, &mut substream(spec.seed, 0))
    };

    let verdict = model.verdict();
    if !verdict.sr_predicted {
        return Ok(OptimizeResult {
            noise_level: spec.lower,
            mi: eval(spec.lower)?,
            evaluations: 1,
            trials_per_eval: per_eval,
            sr_predicted: false,
            warning: Some(format!(
                "location {} lies in a forbidden interval; no noise benefit expected, \
                 returning the lower bound",
                verdict.location_tested
            )),
        });
    }

    let n = spec.coarse_points;
    let step = spec.step();
    let grid: Vec<f64> = (0..n)
        .map(|i| {
            if i + 1 == n {
                spec.upper
            } else {
                spec.lower + step * i as f64
            }
        })
        .collect();
    let coarse = grid
        .iter()
        .map(|&x| eval(x))
        .collect::<Result<Vec<f64>>>()?;
    let (smoothed, _) = smooth_grid(&coarse, &vec![0.0; n], 1, n, 1.0);
    let best = (0..n)
        .max_by(|&a, &b| smoothed[a].total_cmp(&smoothed[b]))
        .unwrap_or(0);

    let (mut a, mut b) = (grid[best.saturating_sub(1)], grid[(best + 1).min(n - 1)]);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (eval(c)?, eval(d)?);
    for _ in 0..spec.refinement_steps() {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d)?;
        }
    }
    let (noise_level, mi) = if fc >= fd { (c, fc) } else { (d, fd) };
    Ok(OptimizeResult {
        noise_level,
        mi,
        evaluations,
        trials_per_eval: per_eval,
        sr_predicted: true,
        warning: (!verdict.reliable()).then(|| {
            "location is on an interval endpoint or the signal is not subthreshold".into()
        }),
    })
}
