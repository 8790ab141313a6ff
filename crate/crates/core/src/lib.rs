//! Simulation and verification of stochastic-resonance noise benefits in
//! threshold-detected quantum-optical channels.
//!
//! Two channel models are provided: a squeezed coherent-state link read out
//! by inefficient homodyne detection and thresholded to one bit
//! ([`basic`]), and a four-state continuous-variable key distribution link
//! attacked with an amplifier and beamsplitter and decoded into
//! `{0, 1, inconclusive}` ([`cvqkd`]). Channel noise is either alpha-stable
//! ([`stable`]) or any finite-variance law with a closed-form characteristic
//! function ([`noise`]).
//!
//! Mutual information is computed both from Monte Carlo joint counts and from
//! the exact conditional probabilities ([`info`]). The forbidden-interval
//! predicates in [`interval`] decide whether the mutual information must
//! collapse as all noise sources vanish, and [`experiment`] drives sweeps,
//! noise-level search and the theorem limit suites.

// `!(x >= 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod basic;
pub mod chebyshev;
pub mod config;
pub mod cvqkd;
mod error;
pub mod experiment;
pub mod info;
pub mod interval;
pub mod noise;
mod quad;
pub mod rng;
pub mod stable;
pub mod stats;

pub use basic::{BasicModel, BasicModelParams, TrialRecord};
pub use cvqkd::{CvqkdModel, CvqkdParams, TernaryOutcome};
pub use error::{Error, Result};
pub use experiment::{
    detect_sr, find_optimal_noise, run_sweep, ModelSpec, SrReport, SweepResult, SweepSpec,
};
pub use info::{JointCounts, JointDistribution, TransitionMatrix};
pub use interval::{basic_interval, cvqkd_interval, theorem2_constraints, IntervalVerdict};
pub use noise::{ChannelNoise, CompositeNoise};
pub use stable::{gaussian_cdf, StableParams};
