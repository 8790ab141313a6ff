//! Sweeps, noise-benefit detection, noise optimization and the limit suites.

mod detect;
mod optimize;
mod smoothing;
pub mod suites;
mod sweep;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::basic::{BasicModel, BasicModelParams};
use crate::cvqkd::{CvqkdModel, CvqkdParams};
use crate::error::Result;
use crate::info::{analytic_mi, estimate_mi, JointCounts, TransitionMatrix};
use crate::interval::{basic_interval, cvqkd_interval, IntervalVerdict};
use crate::noise::{ChannelNoise, Spread};

pub use detect::{detect_sr, detect_sr_with, SrClass, SrReport, DEFAULT_MIN_BITS};
pub use optimize::{find_optimal_noise, OptimizeResult, OptimizeSpec, MIN_TRIALS_PER_EVAL};
pub use smoothing::{smooth_grid, Smoothing};
pub use sweep::{
    run_sweep, spec_hash, Grid, NoiseAxis, Provenance, SweepCell, SweepResult, SweepSpec,
};

/// Either link model with its full parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    Basic(BasicModelParams),
    Cvqkd(CvqkdParams),
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::Basic(p) => p.validate(),
            ModelSpec::Cvqkd(p) => p.validate(),
        }
    }

    pub fn channel(&self) -> ChannelNoise {
        match self {
            ModelSpec::Basic(p) => p.channel,
            ModelSpec::Cvqkd(p) => p.channel,
        }
    }

    pub fn with_channel(mut self, channel: ChannelNoise) -> Self {
        match &mut self {
            ModelSpec::Basic(p) => p.channel = channel,
            ModelSpec::Cvqkd(p) => p.channel = channel,
        }
        self
    }

    pub fn with_noise_level(self, spread: Spread, value: f64) -> Result<Self> {
        Ok(self.with_channel(self.channel().with_spread(spread, value)?))
    }

    pub fn with_r(mut self, r: f64) -> Self {
        match &mut self {
            ModelSpec::Basic(p) => p.r = r,
            ModelSpec::Cvqkd(p) => p.r = r,
        }
        self
    }

    pub fn p_s1(&self) -> f64 {
        match self {
            ModelSpec::Basic(p) => p.p_s1,
            ModelSpec::Cvqkd(p) => p.p_s1,
        }
    }

    pub fn outputs(&self) -> usize {
        match self {
            ModelSpec::Basic(_) => 2,
            ModelSpec::Cvqkd(_) => 3,
        }
    }

    /// Forbidden-interval verdict for the channel location.
    pub fn verdict(&self) -> IntervalVerdict {
        let location = self.channel().location();
        match self {
            ModelSpec::Basic(p) => basic_interval(p.alpha_x, p.theta).verdict(location),
            ModelSpec::Cvqkd(p) => cvqkd_interval(p.alpha, p.theta).verdict(location),
        }
    }

    pub fn simulator(&self) -> Result<Simulator> {
        Ok(match self {
            ModelSpec::Basic(p) => Simulator::Basic(BasicModel::new(*p)?),
            ModelSpec::Cvqkd(p) => Simulator::Cvqkd(CvqkdModel::new(*p)?),
        })
    }

    pub fn transition(&self) -> Result<TransitionMatrix> {
        match self.simulator()? {
            Simulator::Basic(m) => m.conditional_probs(),
            Simulator::Cvqkd(m) => m.conditional_probs(),
        }
    }

    pub fn analytic_mi(&self) -> Result<f64> {
        analytic_mi(&self.transition()?, self.p_s1())
    }
}

/// A built model, ready to draw trials.
#[derive(Debug, Clone)]
pub enum Simulator {
    Basic(BasicModel),
    Cvqkd(CvqkdModel),
}

impl Simulator {
    pub fn simulate<R: Rng + ?Sized>(&self, trials: u64, rng: &mut R) -> JointCounts {
        match self {
            Simulator::Basic(m) => {
                let mut counts = JointCounts::new(2, 2);
                for _ in 0..trials {
                    let t = m.trial(rng);
                    counts.record(t.s as usize, t.y as usize);
                }
                counts
            }
            Simulator::Cvqkd(m) => {
                let mut counts = JointCounts::new(2, 3);
                for _ in 0..trials {
                    let t = m.trial(rng);
                    counts.record(t.s as usize, t.outcome.index());
                }
                counts
            }
        }
    }

    /// Plug-in MI of a fresh batch of `trials` trials.
    pub fn estimate_mi<R: Rng + ?Sized>(&self, trials: u64, rng: &mut R) -> Result<f64> {
        estimate_mi(&self.simulate(trials, rng))
    }
}
