//! Basic squeezed-light threshold link.
//!
//! Alice displaces a squeezed vacuum by `±α_x`, the channel adds `ν_x`, Bob
//! reads the position quadrature with efficiency `η` and thresholds at `θ`:
//! `Y = u(√η·(−1)^{S+1}·α_x + N − θ)` with `u(0) = 1`.

use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::info::TransitionMatrix;
use crate::noise::{basic_noise, ChannelNoise, CompositeNoise};

fn default_prior() -> f64 {
    0.5
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasicModelParams {
    /// Signal amplitude `Re{α}`.
    pub alpha_x: f64,
    pub theta: f64,
    /// Squeezing strength; `+∞` removes the squeezed vacuum term entirely.
    #[serde(default)]
    pub r: f64,
    pub eta: f64,
    pub channel: ChannelNoise,
    #[serde(default = "default_prior")]
    pub p_s1: f64,
}

impl BasicModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_x > 0.0 && self.alpha_x.is_finite()) {
            return Err(invalid("alpha_x", format!("{} must be > 0", self.alpha_x)));
        }
        if !self.theta.is_finite() {
            return Err(invalid("theta", "must be finite"));
        }
        if !(self.r >= 0.0) {
            return Err(invalid("r", format!("{} must be >= 0", self.r)));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(invalid("eta", format!("{} not in (0, 1]", self.eta)));
        }
        if !(self.p_s1 > 0.0 && self.p_s1 < 1.0) {
            return Err(invalid("p_s1", format!("{} not in (0, 1)", self.p_s1)));
        }
        self.channel.validate()
    }

    /// `α_x < θ`: the hypothesis under which the forbidden-interval
    /// prediction applies. Other values are simulated but flagged.
    pub fn is_subthreshold(&self) -> bool {
        self.alpha_x < self.theta
    }

    /// Received signal amplitude `√η·α_x`.
    pub fn received_amplitude(&self) -> f64 {
        self.eta.sqrt() * self.alpha_x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub s: u8,
    pub y: u8,
    pub received: f64,
}

/// A validated basic model with its noise law precomputed.
#[derive(Debug, Clone, Copy)]
pub struct BasicModel {
    params: BasicModelParams,
    noise: CompositeNoise,
    amplitude: f64,
}

impl BasicModel {
    pub fn new(params: BasicModelParams) -> Result<Self> {
        let noise = basic_noise(&params)?;
        Ok(BasicModel {
            params,
            noise,
            amplitude: params.received_amplitude(),
        })
    }

    pub fn params(&self) -> &BasicModelParams {
        &self.params
    }

    pub fn noise(&self) -> &CompositeNoise {
        &self.noise
    }

    pub fn trial<R: Rng + ?Sized>(&self, rng: &mut R) -> TrialRecord {
        let s = u8::from(rng.random::<f64>() < self.params.p_s1);
        let signal = if s == 1 {
            self.amplitude
        } else {
            -self.amplitude
        };
        let received = signal + self.noise.sample(rng);
        TrialRecord {
            s,
            y: u8::from(received >= self.params.theta),
            received,
        }
    }

    /// `p(0|0) = F_N(θ + √η α_x)`, `p(0|1) = F_N(θ − √η α_x)`,
    /// `p(1|s) = 1 − p(0|s)`.
    pub fn conditional_probs(&self) -> Result<TransitionMatrix> {
        let theta = self.params.theta;
        let p00 = self.noise_below(theta + self.amplitude)?;
        let p01 = self.noise_below(theta - self.amplitude)?;
        TransitionMatrix::new(2, vec![p00, 1.0 - p00, p01, 1.0 - p01])
    }

    fn noise_below(&self, x: f64) -> Result<f64> {
        self.noise.cdf_below(x)
    }
}

pub fn run_trial<R: Rng + ?Sized>(params: &BasicModelParams, rng: &mut R) -> Result<TrialRecord> {
    Ok(BasicModel::new(*params)?.trial(rng))
}

pub fn conditional_probs(params: &BasicModelParams) -> Result<TransitionMatrix> {
    BasicModel::new(*params)?.conditional_probs()
}
