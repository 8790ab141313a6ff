//! Four-state continuous-variable key distribution with thresholded
//! homodyne decoding.
//!
//! Alice sends one of `{|α⟩, |iα⟩, |−α⟩, |−iα⟩}` (bit 1 for the first two),
//! squeezing the quadrature that carries the bit. Eve amplifies with gain `G`
//! and keeps a fraction `1 − η_E` of the beam; Bob measures a random
//! quadrature with efficiency `η_B` and decodes `1` if `x ≥ θ`, `0` if
//! `x ≤ −θ`, and inconclusive otherwise. Only correct-basis data carries
//! the key, so the analysis runs on position-quadrature data.

use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::info::TransitionMatrix;
use crate::noise::{cvqkd_noise, cvqkd_noise_with_squeezing, ChannelNoise, CompositeNoise};

fn default_prior() -> f64 {
    0.5
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CvqkdParams {
    pub alpha: f64,
    pub theta: f64,
    #[serde(default)]
    pub r: f64,
    /// Eve's amplifier gain `G ≥ 1`.
    #[serde(default = "unit")]
    pub gain: f64,
    /// Eve's beamsplitter transmittivity.
    #[serde(default = "unit")]
    pub eta_e: f64,
    /// Bob's homodyne efficiency.
    #[serde(default = "unit")]
    pub eta_b: f64,
    pub channel: ChannelNoise,
    #[serde(default = "default_prior")]
    pub p_s1: f64,
}

impl CvqkdParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(invalid("alpha", format!("{} must be > 0", self.alpha)));
        }
        if !(self.theta > 0.0 && self.theta.is_finite()) {
            return Err(invalid("theta", format!("{} must be > 0", self.theta)));
        }
        if !(self.r >= 0.0) {
            return Err(invalid("r", format!("{} must be >= 0", self.r)));
        }
        if !(self.gain >= 1.0 && self.gain.is_finite()) {
            return Err(invalid("gain", format!("{} must be >= 1", self.gain)));
        }
        if !(self.eta_e > 0.0 && self.eta_e <= 1.0) {
            return Err(invalid("eta_e", format!("{} not in (0, 1]", self.eta_e)));
        }
        if !(self.eta_b > 0.0 && self.eta_b <= 1.0) {
            return Err(invalid("eta_b", format!("{} not in (0, 1]", self.eta_b)));
        }
        if !(self.p_s1 > 0.0 && self.p_s1 < 1.0) {
            return Err(invalid("p_s1", format!("{} not in (0, 1)", self.p_s1)));
        }
        self.channel.validate()
    }

    pub fn is_subthreshold(&self) -> bool {
        self.alpha < self.theta
    }

    /// `k = √(η_E η_B G)`, the overall gain applied to signal and channel noise.
    pub fn gain_product(&self) -> f64 {
        (self.eta_e * self.eta_b * self.gain).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TernaryOutcome {
    Zero,
    One,
    Inconclusive,
}

impl TernaryOutcome {
    /// Closed cut points at `±θ`.
    pub fn decode(received: f64, theta: f64) -> Self {
        if received >= theta {
            TernaryOutcome::One
        } else if received <= -theta {
            TernaryOutcome::Zero
        } else {
            TernaryOutcome::Inconclusive
        }
    }

    /// Column index in a 2×3 joint table.
    pub fn index(self) -> usize {
        match self {
            TernaryOutcome::Zero => 0,
            TernaryOutcome::One => 1,
            TernaryOutcome::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Position,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourState {
    Alpha,
    IAlpha,
    MinusAlpha,
    MinusIAlpha,
}

impl FourState {
    pub const ALL: [FourState; 4] = [
        FourState::Alpha,
        FourState::IAlpha,
        FourState::MinusAlpha,
        FourState::MinusIAlpha,
    ];

    pub fn bit(self) -> u8 {
        match self {
            FourState::Alpha | FourState::IAlpha => 1,
            FourState::MinusAlpha | FourState::MinusIAlpha => 0,
        }
    }

    pub fn encoding_basis(self) -> Basis {
        match self {
            FourState::Alpha | FourState::MinusAlpha => Basis::Position,
            FourState::IAlpha | FourState::MinusIAlpha => Basis::Momentum,
        }
    }

    pub fn from_bit(bit: u8, basis: Basis) -> Self {
        match (bit, basis) {
            (1, Basis::Position) => FourState::Alpha,
            (1, Basis::Momentum) => FourState::IAlpha,
            (_, Basis::Position) => FourState::MinusAlpha,
            (_, Basis::Momentum) => FourState::MinusIAlpha,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CvqkdTrial {
    pub s: u8,
    pub outcome: TernaryOutcome,
    pub received: f64,
}

/// One pre-sifting record: what Alice sent and what Bob measured.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawTrial {
    pub state: FourState,
    pub basis: Basis,
    pub outcome: TernaryOutcome,
    pub received: f64,
}

impl RawTrial {
    pub fn is_correct_basis(&self) -> bool {
        self.state.encoding_basis() == self.basis
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CvqkdModel {
    params: CvqkdParams,
    noise: CompositeNoise,
    /// Noise of the quadrature conjugate to the squeezed one; `None` when
    /// it is infinitely anti-squeezed.
    conjugate_noise: Option<CompositeNoise>,
    amplitude: f64,
}

impl CvqkdModel {
    pub fn new(params: CvqkdParams) -> Result<Self> {
        let noise = cvqkd_noise(&params)?;
        let anti = (2.0 * params.r).exp();
        let conjugate_noise = if anti.is_finite() {
            Some(cvqkd_noise_with_squeezing(&params, anti)?)
        } else {
            None
        };
        Ok(CvqkdModel {
            params,
            noise,
            conjugate_noise,
            amplitude: params.gain_product() * params.alpha,
        })
    }

    pub fn params(&self) -> &CvqkdParams {
        &self.params
    }

    pub fn noise(&self) -> &CompositeNoise {
        &self.noise
    }

    /// A correct-basis position-quadrature trial.
    pub fn trial<R: Rng + ?Sized>(&self, rng: &mut R) -> CvqkdTrial {
        self.trial_in_basis(Basis::Position, rng)
    }

    /// A correct-basis trial with the bit encoded on, and read from, `basis`.
    pub fn trial_in_basis<R: Rng + ?Sized>(&self, basis: Basis, rng: &mut R) -> CvqkdTrial {
        let s = u8::from(rng.random::<f64>() < self.params.p_s1);
        let (outcome, received) = self.measure(FourState::from_bit(s, basis), basis, rng);
        CvqkdTrial {
            s,
            outcome,
            received,
        }
    }

    /// The full protocol step before sifting: random state, random basis.
    pub fn raw_trial<R: Rng + ?Sized>(&self, rng: &mut R) -> RawTrial {
        let s = u8::from(rng.random::<f64>() < self.params.p_s1);
        let encoding = if rng.random::<bool>() {
            Basis::Momentum
        } else {
            Basis::Position
        };
        let basis = if rng.random::<bool>() {
            Basis::Momentum
        } else {
            Basis::Position
        };
        let state = FourState::from_bit(s, encoding);
        let (outcome, received) = self.measure(state, basis, rng);
        RawTrial {
            state,
            basis,
            outcome,
            received,
        }
    }

    fn measure<R: Rng + ?Sized>(
        &self,
        state: FourState,
        basis: Basis,
        rng: &mut R,
    ) -> (TernaryOutcome, f64) {
        let received = if state.encoding_basis() == basis {
            let signal = if state.bit() == 1 {
                self.amplitude
            } else {
                -self.amplitude
            };
            signal + self.noise.sample(rng)
        } else {
            match &self.conjugate_noise {
                Some(noise) => noise.sample(rng),
                None if rng.random::<bool>() => f64::INFINITY,
                None => f64::NEG_INFINITY,
            }
        };
        (
            TernaryOutcome::decode(received, self.params.theta),
            received,
        )
    }

    /// Rows `s ∈ {0, 1}`, columns `y ∈ {0, 1, ε}`.
    pub fn conditional_probs(&self) -> Result<TransitionMatrix> {
        let theta = self.params.theta;
        let ka = self.amplitude;
        let mut data = Vec::with_capacity(6);
        for signal in [-ka, ka] {
            let zero = self.noise.cdf(-theta - signal)?;
            let one = 1.0 - self.noise.cdf_below(theta - signal)?;
            let rest = 1.0 - zero - one;
            debug_assert!(rest >= -1e-9, "negative inconclusive mass {rest}");
            data.extend([zero, one, rest.max(0.0)]);
        }
        TransitionMatrix::new(3, data)
    }
}

pub fn run_cvqkd_trial<R: Rng + ?Sized>(params: &CvqkdParams, rng: &mut R) -> Result<CvqkdTrial> {
    Ok(CvqkdModel::new(*params)?.trial(rng))
}

pub fn cvqkd_conditional_probs(params: &CvqkdParams) -> Result<TransitionMatrix> {
    CvqkdModel::new(*params)?.conditional_probs()
}

/// Keeps the trials whose measurement basis matches the encoding quadrature.
pub fn sift(trials: &[RawTrial]) -> Vec<RawTrial> {
    trials
        .iter()
        .copied()
        .filter(RawTrial::is_correct_basis)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable::gaussian_cdf;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn noiseless(location: f64) -> CvqkdParams {
        CvqkdParams {
            alpha: 1.1,
            theta: 1.6,
            r: f64::INFINITY,
            gain: 1.0,
            eta_e: 1.0,
            eta_b: 1.0,
            channel: ChannelNoise::gaussian(location, 0.0).unwrap(),
            p_s1: 0.5,
        }
    }

    #[test]
    fn subthreshold_signal_is_always_inconclusive() {
        let model = CvqkdModel::new(noiseless(0.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5000 {
            assert_eq!(model.trial(&mut rng).outcome, TernaryOutcome::Inconclusive);
        }
    }

    #[test]
    fn location_in_positive_interval() {
        let model = CvqkdModel::new(noiseless(2.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5000 {
            let t = model.trial(&mut rng);
            let expected = if t.s == 1 {
                TernaryOutcome::One
            } else {
                TernaryOutcome::Inconclusive
            };
            assert_eq!(t.outcome, expected);
        }
        let cond = model.conditional_probs().unwrap();
        assert_eq!(cond.get(1, 1), 1.0);
        assert_eq!(cond.get(0, 2), 1.0);
    }

    #[test]
    fn location_in_negative_interval() {
        let model = CvqkdModel::new(noiseless(-2.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5000 {
            let t = model.trial(&mut rng);
            let expected = if t.s == 0 {
                TernaryOutcome::Zero
            } else {
                TernaryOutcome::Inconclusive
            };
            assert_eq!(t.outcome, expected);
        }
    }

    #[test]
    fn decode_cut_points_are_closed() {
        assert_eq!(TernaryOutcome::decode(1.6, 1.6), TernaryOutcome::One);
        assert_eq!(TernaryOutcome::decode(-1.6, 1.6), TernaryOutcome::Zero);
        assert_eq!(
            TernaryOutcome::decode(1.5999, 1.6),
            TernaryOutcome::Inconclusive
        );
    }

    #[test]
    fn gaussian_six_probabilities() {
        let mut p = noiseless(0.0);
        p.r = 20.0;
        p.channel = ChannelNoise::gaussian(0.0, 1.0).unwrap();
        let cond = cvqkd_conditional_probs(&p).unwrap();
        assert!((cond.get(1, 1) - (1.0 - gaussian_cdf(0.5))).abs() < 1e-12);
        assert!((cond.get(1, 0) - gaussian_cdf(-2.7)).abs() < 1e-12);
        assert!((cond.get(0, 0) - cond.get(1, 1)).abs() < 1e-12);
        assert!((cond.get(0, 1) - cond.get(1, 0)).abs() < 1e-12);
        for s in 0..2 {
            let total: f64 = (0..3).map(|y| cond.get(s, y)).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sift_enumerated_fixture() {
        let mk = |state, basis| RawTrial {
            state,
            basis,
            outcome: TernaryOutcome::Inconclusive,
            received: 0.0,
        };
        let trials = vec![
            mk(FourState::Alpha, Basis::Position),
            mk(FourState::Alpha, Basis::Momentum),
            mk(FourState::IAlpha, Basis::Momentum),
            mk(FourState::IAlpha, Basis::Position),
            mk(FourState::MinusAlpha, Basis::Momentum),
            mk(FourState::MinusAlpha, Basis::Position),
            mk(FourState::MinusIAlpha, Basis::Position),
            mk(FourState::MinusIAlpha, Basis::Momentum),
        ];
        let kept = sift(&trials);
        assert_eq!(kept, vec![trials[0], trials[2], trials[5], trials[7]]);
    }

    #[test]
    fn sift_keeps_position_only_input() {
        let model = CvqkdModel::new(noiseless(0.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let trials: Vec<RawTrial> = (0..1000)
            .map(|i| {
                let state = if i % 2 == 0 {
                    FourState::Alpha
                } else {
                    FourState::MinusAlpha
                };
                let (outcome, received) = model.measure(state, Basis::Position, &mut rng);
                RawTrial {
                    state,
                    basis: Basis::Position,
                    outcome,
                    received,
                }
            })
            .collect();
        assert_eq!(sift(&trials).len(), trials.len());
    }

    #[test]
    fn sift_retains_half_of_random_trials() {
        let mut p = noiseless(0.0);
        p.r = 0.5;
        p.channel = ChannelNoise::gaussian(0.0, 0.3).unwrap();
        let model = CvqkdModel::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let trials: Vec<RawTrial> = (0..1_000_000).map(|_| model.raw_trial(&mut rng)).collect();
        let kept = sift(&trials).len() as f64 / trials.len() as f64;
        assert!((kept - 0.5).abs() < 0.002, "retention {kept}");
    }

    #[test]
    fn validation() {
        let mut p = noiseless(0.0);
        p.gain = 0.9;
        assert!(CvqkdModel::new(p).is_err());
        p.gain = 1.0;
        p.eta_b = 1.2;
        assert!(CvqkdModel::new(p).is_err());
        p.eta_b = 1.0;
        p.eta_e = 0.0;
        assert!(CvqkdModel::new(p).is_err());
    }
}
