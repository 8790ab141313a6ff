//! Shared fixtures for the benchmarks.

use qsr_core::noise::ChannelNoise;
use qsr_core::{BasicModelParams, CvqkdParams, StableParams};

/// The basic-link setting of the Gaussian sweep, at one grid point.
pub fn basic_gaussian() -> BasicModelParams {
    BasicModelParams {
        alpha_x: 1.1,
        theta: 1.6,
        r: 1.5,
        eta: 1.0,
        channel: ChannelNoise::gaussian(0.0, 1.0).expect("valid"),
        p_s1: 0.5,
    }
}

/// The key-distribution setting of the Cauchy sweep, at one grid point.
pub fn cvqkd_cauchy() -> CvqkdParams {
    CvqkdParams {
        alpha: 1.1,
        theta: 1.6,
        r: 1.5,
        gain: 1.0,
        eta_e: 1.0,
        eta_b: 1.0,
        channel: ChannelNoise::cauchy(0.0, 0.5).expect("valid"),
        p_s1: 0.5,
    }
}

pub fn stable(alpha: f64, beta: f64) -> StableParams {
    StableParams::new(alpha, beta, 0.5, 0.0).expect("valid")
}
