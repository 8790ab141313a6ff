//! Total receiver noise: an aggregate zero-mean Gaussian part (vacuum,
//! squeezing, loss and amplifier modes) plus a scaled copy of the channel
//! noise.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::basic::BasicModelParams;
use crate::cvqkd::CvqkdParams;
use crate::error::{invalid, Error, Result};
use crate::quad;
use crate::stable::{gaussian_cdf, StableParams};

/// `|φ(Ω)|` below which the inversion integral is truncated.
const CF_FLOOR_LOG: f64 = 27.631; // -ln(1e-12)
const INVERSION_TOL: f64 = 1e-9;
const MAX_PANELS: f64 = 1.0e6;
const EXP_TAIL: f64 = 45.0;

/// Position-quadrature channel noise `ν_x`.
///
/// Finite-variance laws other than the Gaussian are parameterized by their
/// mean and standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelNoise {
    Stable(StableParams),
    Uniform { mean: f64, std: f64 },
    ShiftedExponential { mean: f64, std: f64 },
}

/// How a scalar noise level maps onto the channel noise law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spread {
    /// Standard deviation; finite-variance laws only.
    Std,
    /// Stable dispersion `γ`.
    Dispersion,
}

impl ChannelNoise {
    pub fn gaussian(mean: f64, std: f64) -> Result<Self> {
        Ok(ChannelNoise::Stable(StableParams::gaussian(
            mean,
            std * std,
        )?))
    }

    pub fn cauchy(location: f64, gamma: f64) -> Result<Self> {
        Ok(ChannelNoise::Stable(StableParams::cauchy(location, gamma)?))
    }

    pub fn uniform(mean: f64, std: f64) -> Result<Self> {
        let noise = ChannelNoise::Uniform { mean, std };
        noise.validate()?;
        Ok(noise)
    }

    pub fn shifted_exponential(mean: f64, std: f64) -> Result<Self> {
        let noise = ChannelNoise::ShiftedExponential { mean, std };
        noise.validate()?;
        Ok(noise)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ChannelNoise::Stable(p) => p.validate(),
            ChannelNoise::Uniform { mean, std }
            | ChannelNoise::ShiftedExponential { mean, std } => {
                if !mean.is_finite() {
                    return Err(invalid("mean", "must be finite"));
                }
                if !(std >= 0.0 && std.is_finite()) {
                    return Err(invalid("std", format!("{std} must be finite and >= 0")));
                }
                Ok(())
            }
        }
    }

    /// Mean for finite-mean laws, stable location otherwise; this is the
    /// value compared against the forbidden interval.
    pub fn location(&self) -> f64 {
        match *self {
            ChannelNoise::Stable(p) => p.location,
            ChannelNoise::Uniform { mean, .. } | ChannelNoise::ShiftedExponential { mean, .. } => {
                mean
            }
        }
    }

    pub fn mean(&self) -> Option<f64> {
        match *self {
            ChannelNoise::Stable(p) => p.mean(),
            ChannelNoise::Uniform { mean, .. } | ChannelNoise::ShiftedExponential { mean, .. } => {
                Some(mean)
            }
        }
    }

    pub fn variance(&self) -> Option<f64> {
        match *self {
            ChannelNoise::Stable(p) => p.variance(),
            ChannelNoise::Uniform { std, .. } | ChannelNoise::ShiftedExponential { std, .. } => {
                Some(std * std)
            }
        }
    }

    fn is_degenerate(&self) -> bool {
        match *self {
            ChannelNoise::Stable(p) => p.gamma == 0.0,
            ChannelNoise::Uniform { std, .. } | ChannelNoise::ShiftedExponential { std, .. } => {
                std == 0.0
            }
        }
    }

    /// Returns the same law family with its spread set to `value`.
    pub fn with_spread(&self, spread: Spread, value: f64) -> Result<Self> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(invalid(
                "noise level",
                format!("{value} must be finite and >= 0"),
            ));
        }
        let out = match (*self, spread) {
            (ChannelNoise::Stable(p), Spread::Std) if p.is_gaussian() => {
                ChannelNoise::Stable(StableParams {
                    gamma: value * value / 2.0,
                    ..p
                })
            }
            (ChannelNoise::Stable(_), Spread::Std) => {
                return Err(invalid(
                    "noise axis",
                    "a standard-deviation axis needs a finite-variance channel law",
                ))
            }
            (ChannelNoise::Stable(p), Spread::Dispersion) => {
                ChannelNoise::Stable(StableParams { gamma: value, ..p })
            }
            (ChannelNoise::Uniform { mean, .. }, Spread::Std) => {
                ChannelNoise::Uniform { mean, std: value }
            }
            (ChannelNoise::ShiftedExponential { mean, .. }, Spread::Std) => {
                ChannelNoise::ShiftedExponential { mean, std: value }
            }
            (_, Spread::Dispersion) => {
                return Err(invalid(
                    "noise axis",
                    "a dispersion axis needs a stable channel law",
                ))
            }
        };
        out.validate()?;
        Ok(out)
    }

    /// Returns the same law moved so that its location (mean) is `location`.
    pub fn with_location(&self, location: f64) -> Self {
        match *self {
            ChannelNoise::Stable(p) => ChannelNoise::Stable(StableParams { location, ..p }),
            ChannelNoise::Uniform { std, .. } => ChannelNoise::Uniform {
                mean: location,
                std,
            },
            ChannelNoise::ShiftedExponential { std, .. } => ChannelNoise::ShiftedExponential {
                mean: location,
                std,
            },
        }
    }

    pub fn cf(&self, omega: f64) -> Complex64 {
        match *self {
            ChannelNoise::Stable(p) => p.cf(omega),
            ChannelNoise::Uniform { mean, std } => {
                let h = std * 3f64.sqrt();
                let x = omega * h;
                let sinc = if x.abs() < 1e-8 {
                    1.0 - x * x / 6.0
                } else {
                    x.sin() / x
                };
                Complex64::from_polar(sinc, omega * mean)
            }
            ChannelNoise::ShiftedExponential { mean, std } => {
                if std == 0.0 {
                    return Complex64::from_polar(1.0, omega * mean);
                }
                let rate = 1.0 / std;
                let shift = mean - std;
                Complex64::from_polar(1.0, omega * shift) * rate / Complex64::new(rate, -omega)
            }
        }
    }

    /// Closed-form CDF, when the law has one.
    pub fn closed_form_cdf(&self, x: f64) -> Option<f64> {
        match *self {
            ChannelNoise::Stable(p) => p.closed_form_cdf(x),
            ChannelNoise::Uniform { mean, std } => {
                if std == 0.0 {
                    return Some(if x >= mean { 1.0 } else { 0.0 });
                }
                let h = std * 3f64.sqrt();
                Some(((x - (mean - h)) / (2.0 * h)).clamp(0.0, 1.0))
            }
            ChannelNoise::ShiftedExponential { mean, std } => {
                if std == 0.0 {
                    return Some(if x >= mean { 1.0 } else { 0.0 });
                }
                let shift = mean - std;
                Some(if x <= shift {
                    0.0
                } else {
                    -(-(x - shift) / std).exp_m1()
                })
            }
        }
    }
}

impl Distribution<f64> for ChannelNoise {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            ChannelNoise::Stable(p) => p.sample(rng),
            ChannelNoise::Uniform { mean, std } => {
                let h = std * 3f64.sqrt();
                let u: f64 = rng.random();
                mean - h + 2.0 * h * u
            }
            ChannelNoise::ShiftedExponential { mean, std } => {
                let e: f64 = Exp1.sample(rng);
                mean - std + std * e
            }
        }
    }
}

/// Law of the total noise `N = G + k·ν_x`, `G ~ Normal(0, gauss_var)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompositeNoise {
    pub gauss_var: f64,
    pub channel_scale: f64,
    pub channel: ChannelNoise,
}

impl CompositeNoise {
    pub fn new(gauss_var: f64, channel_scale: f64, channel: ChannelNoise) -> Result<Self> {
        if !(gauss_var >= 0.0 && gauss_var.is_finite()) {
            return Err(invalid(
                "gauss_var",
                format!("{gauss_var} must be finite and >= 0"),
            ));
        }
        if !(channel_scale > 0.0 && channel_scale.is_finite()) {
            return Err(invalid(
                "channel_scale",
                format!("{channel_scale} must be > 0"),
            ));
        }
        channel.validate()?;
        Ok(CompositeNoise {
            gauss_var,
            channel_scale,
            channel,
        })
    }

    /// `k · location(ν_x)`: the point the noise law collapses onto.
    pub fn center(&self) -> f64 {
        self.channel_scale * self.channel.location()
    }

    pub fn mean(&self) -> Option<f64> {
        self.channel.mean().map(|m| self.channel_scale * m)
    }

    pub fn variance(&self) -> Option<f64> {
        self.channel
            .variance()
            .map(|v| self.gauss_var + self.channel_scale * self.channel_scale * v)
    }

    /// `exp{−gauss_var·ω²/2} · φ_ν(k·ω)`.
    pub fn cf(&self, omega: f64) -> Complex64 {
        (-0.5 * self.gauss_var * omega * omega).exp() * self.channel.cf(self.channel_scale * omega)
    }

    /// True when `N` is a point mass (no Gaussian part, degenerate channel).
    pub fn is_point_mass(&self) -> bool {
        self.gauss_var == 0.0 && self.channel.is_degenerate()
    }

    /// `Pr{N < x}`; differs from [`cdf`](Self::cdf) only at the atom of a
    /// point mass.
    pub fn cdf_below(&self, x: f64) -> Result<f64> {
        if self.is_point_mass() {
            return Ok(if x > self.center() { 1.0 } else { 0.0 });
        }
        self.cdf(x)
    }

    /// `Pr{N ≤ x}`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        let k = self.channel_scale;
        let gv = self.gauss_var;
        if let ChannelNoise::Stable(p) = self.channel {
            if p.is_gaussian() || p.gamma == 0.0 {
                let var = gv + k * k * p.variance().unwrap_or(0.0);
                let mean = k * p.location;
                return Ok(if var == 0.0 {
                    if x >= mean {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    gaussian_cdf((x - mean) / var.sqrt())
                });
            }
        }
        if gv == 0.0 {
            if let Some(v) = self.channel.closed_form_cdf(x / k) {
                return Ok(v);
            }
        }
        if self.channel.is_degenerate() {
            // Gaussian part alone, shifted onto the atom.
            return Ok(gaussian_cdf((x - self.center()) / gv.sqrt()));
        }
        match self.channel {
            ChannelNoise::Stable(p) => self.gil_pelaez(&p, x),
            ChannelNoise::Uniform { mean, std } => {
                let sd = gv.sqrt();
                let h = std * 3f64.sqrt();
                let f = |v: f64| gaussian_cdf((x - k * v) / sd);
                quad::integrate(&f, mean - h, mean + h, INVERSION_TOL * 2.0 * h)
                    .map(|v| (v / (2.0 * h)).clamp(0.0, 1.0))
                    .ok_or_else(|| Error::NonConvergence("uniform convolution".into()))
            }
            ChannelNoise::ShiftedExponential { mean, std } => {
                let sd = gv.sqrt();
                let shift = mean - std;
                let f = |w: f64| (-w).exp() * gaussian_cdf((x - k * (shift + std * w)) / sd);
                quad::integrate(&f, 0.0, EXP_TAIL, INVERSION_TOL)
                    .map(|v| v.clamp(0.0, 1.0))
                    .ok_or_else(|| Error::NonConvergence("exponential convolution".into()))
            }
        }
    }

    /// Gil-Pelaez inversion:
    /// `F(x) = 1/2 − (1/π) ∫₀^∞ Im[e^{−iωx} φ_N(ω)] / ω dω`.
    fn gil_pelaez(&self, p: &StableParams, x: f64) -> Result<f64> {
        let k = self.channel_scale;
        let gv = self.gauss_var;
        let stable_rate = p.gamma * k.powf(p.alpha);
        let mut cutoff = f64::INFINITY;
        if gv > 0.0 {
            cutoff = cutoff.min((2.0 * CF_FLOOR_LOG / gv).sqrt());
        }
        if stable_rate > 0.0 {
            cutoff = cutoff.min((CF_FLOOR_LOG / stable_rate).powf(1.0 / p.alpha));
        }
        let offset = (x - self.center()).abs();
        let panels = (cutoff * (offset + 1.0) / PI).ceil() + 4.0;
        if !cutoff.is_finite() || panels > MAX_PANELS {
            return Err(Error::NonConvergence(format!(
                "integration range {cutoff:.3e} too long for x = {x}"
            )));
        }
        let integrand = |w: f64| {
            if w == 0.0 {
                return 0.0;
            }
            (Complex64::from_polar(1.0, -w * x) * self.cf(w)).im / w
        };
        let integral =
            quad::integrate_panels(&integrand, 0.0, cutoff, panels as usize, INVERSION_TOL)
                .ok_or_else(|| Error::NonConvergence(format!("quadrature failed at x = {x}")))?;
        Ok((0.5 - integral / PI).clamp(0.0, 1.0))
    }
}

impl Distribution<f64> for CompositeNoise {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let gauss = if self.gauss_var > 0.0 {
            let z: f64 = StandardNormal.sample(rng);
            self.gauss_var.sqrt() * z
        } else {
            0.0
        };
        gauss + self.channel_scale * self.channel.sample(rng)
    }
}

/// Total noise of the basic model:
/// `N = √η (X e^{−r} + ν_x) + √(1−η) X_H`, vacuum variance 1/2.
pub fn basic_noise(params: &BasicModelParams) -> Result<CompositeNoise> {
    params.validate()?;
    let eta = params.eta;
    let gauss_var = eta * (-2.0 * params.r).exp() / 2.0 + (1.0 - eta) / 2.0;
    CompositeNoise::new(gauss_var, eta.sqrt(), params.channel)
}

/// Total noise seen by Bob under the amplifier–beamsplitter attack.
pub fn cvqkd_noise(params: &CvqkdParams) -> Result<CompositeNoise> {
    params.validate()?;
    cvqkd_noise_with_squeezing(params, (-2.0 * params.r).exp())
}

/// `squeeze_gain` multiplies the vacuum variance of the measured quadrature
/// (`e^{−2r}` when it was squeezed, `e^{2r}` for the conjugate quadrature).
pub(crate) fn cvqkd_noise_with_squeezing(
    params: &CvqkdParams,
    squeeze_gain: f64,
) -> Result<CompositeNoise> {
    let (g, ee, eb) = (params.gain, params.eta_e, params.eta_b);
    let gauss_var = (eb * (ee * g * squeeze_gain + ee * (g - 1.0) + (1.0 - ee)) + 1.0 - eb) / 2.0;
    CompositeNoise::new(gauss_var, params.gain_product(), params.channel)
}

pub fn sample_noise<R: Rng + ?Sized>(noise: &CompositeNoise, rng: &mut R) -> f64 {
    noise.sample(rng)
}

pub fn noise_cf(noise: &CompositeNoise, omega: f64) -> Complex64 {
    noise.cf(omega)
}

pub fn noise_cdf(noise: &CompositeNoise, x: f64) -> Result<f64> {
    noise.cdf(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{ks_p_value, ks_statistic};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use statrs::distribution::{ContinuousCDF, Normal};

    fn phi(z: f64) -> f64 {
        Normal::standard().cdf(z)
    }

    fn pdf(z: f64) -> f64 {
        (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
    }

    /// `Gaussian(0, gv) + k·Cauchy(a, γ)` by brute force over `v = a + γ tan t`.
    fn gauss_cauchy_oracle(gv: f64, k: f64, a: f64, gamma: f64, x: f64) -> f64 {
        let n = 400_000;
        let h = PI / n as f64;
        let sd = gv.sqrt();
        (0..n)
            .map(|i| {
                let t = -PI / 2.0 + (i as f64 + 0.5) * h;
                phi((x - k * (a + gamma * t.tan())) / sd)
            })
            .sum::<f64>()
            * h
            / PI
    }

    /// Gaussian convolved with a uniform on `[m − h, m + h]`, scaled by `k`.
    fn gauss_uniform_oracle(gv: f64, k: f64, mean: f64, std: f64, x: f64) -> f64 {
        let sd = gv.sqrt();
        let h = std * 3f64.sqrt();
        let g = |z: f64| z * phi(z) + pdf(z);
        sd / (2.0 * h * k) * (g((x - k * (mean - h)) / sd) - g((x - k * (mean + h)) / sd))
    }

    /// Exponentially modified Gaussian.
    fn gauss_exp_oracle(gv: f64, k: f64, mean: f64, std: f64, x: f64) -> f64 {
        let sd = gv.sqrt();
        let lambda = 1.0 / (k * std);
        let y = x - k * (mean - std);
        phi(y / sd) - (-lambda * y + lambda * lambda * gv / 2.0).exp() * phi(y / sd - lambda * sd)
    }

    #[test]
    fn gaussian_composite_is_closed_form() {
        let n = CompositeNoise::new(0.3, 0.8, ChannelNoise::gaussian(0.5, 0.6).unwrap()).unwrap();
        let var: f64 = 0.3 + 0.64 * 0.36;
        for x in [-2.0, 0.0, 0.4, 1.7] {
            let expect = phi((x - 0.4) / var.sqrt());
            // statrs is only good to ~1e-11 in the upper tail.
            assert!(
                (n.cdf(x).unwrap() - expect).abs() < 1e-10,
                "{x}: {} vs {expect}",
                n.cdf(x).unwrap()
            );
        }
        assert!((n.variance().unwrap() - var).abs() < 1e-15);
        assert_eq!(n.mean(), Some(0.4));
    }

    #[test]
    fn cauchy_inversion_matches_brute_force() {
        for (gv, k, a, gamma) in [
            (0.05, 1.0, 0.0, 0.5),
            (0.5, 0.9, 1.0, 0.1),
            (0.01, 1.2, -0.3, 2.0),
        ] {
            let n = CompositeNoise::new(gv, k, ChannelNoise::cauchy(a, gamma).unwrap()).unwrap();
            for x in [-3.0, -1.6, -0.5, 0.0, 0.5, 1.6, 2.7, 6.0] {
                let got = n.cdf(x).unwrap();
                let want = gauss_cauchy_oracle(gv, k, a, gamma, x);
                assert!(
                    (got - want).abs() < 1e-5,
                    "gv {gv} k {k} x {x}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn uniform_and_exponential_convolutions() {
        for (gv, k, m, s) in [
            (0.05, 1.0, 0.0, 0.5),
            (0.4, 0.95, 1.0, 1.5),
            (1e-4, 1.0, -0.5, 0.2),
        ] {
            let u = CompositeNoise::new(gv, k, ChannelNoise::uniform(m, s).unwrap()).unwrap();
            let e = CompositeNoise::new(gv, k, ChannelNoise::shifted_exponential(m, s).unwrap())
                .unwrap();
            for x in [-2.5, -0.6, 0.0, 0.3, 1.1, 2.7, 5.0] {
                let (got, want) = (u.cdf(x).unwrap(), gauss_uniform_oracle(gv, k, m, s, x));
                assert!((got - want).abs() < 1e-7, "uniform x {x}: {got} vs {want}");
                let (got, want) = (e.cdf(x).unwrap(), gauss_exp_oracle(gv, k, m, s, x));
                assert!((got - want).abs() < 1e-7, "exp x {x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn cdf_is_monotone_with_limits() {
        let channels = [
            ChannelNoise::cauchy(0.2, 0.3).unwrap(),
            ChannelNoise::Stable(StableParams::new(1.5, 0.7, 0.4, 0.0).unwrap()),
            ChannelNoise::Stable(StableParams::new(0.8, -0.5, 0.2, 0.0).unwrap()),
            ChannelNoise::uniform(0.0, 1.0).unwrap(),
            ChannelNoise::shifted_exponential(0.0, 1.0).unwrap(),
        ];
        for ch in channels {
            let n = CompositeNoise::new(0.1, 1.0, ch).unwrap();
            let mut prev = 0.0;
            for i in 0..=60 {
                let x = -6.0 + 0.2 * i as f64;
                let f = n.cdf(x).unwrap();
                assert!(f >= prev - 1e-8, "{ch:?} at {x}: {f} < {prev}");
                prev = f;
            }
            assert!(n.cdf(-60.0).unwrap() < 0.02, "{ch:?}");
            assert!(n.cdf(60.0).unwrap() > 0.98, "{ch:?}");
        }
    }

    #[test]
    fn samples_follow_the_inverted_cdf() {
        let n = CompositeNoise::new(
            0.05,
            0.9,
            ChannelNoise::Stable(StableParams::new(1.5, 0.5, 0.3, 0.2).unwrap()),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut xs: Vec<f64> = (0..20_000).map(|_| n.sample(&mut rng)).collect();
        let d = ks_statistic(&mut xs, |x| n.cdf(x).unwrap());
        assert!(ks_p_value(d, 20_000) > 0.001, "KS distance {d}");
    }

    #[test]
    fn variance_bookkeeping() {
        let p = BasicModelParams {
            alpha_x: 1.1,
            theta: 1.6,
            r: 0.7,
            eta: 0.8,
            channel: ChannelNoise::uniform(0.3, 0.5).unwrap(),
            p_s1: 0.5,
        };
        let n = basic_noise(&p).unwrap();
        let expect = 0.8 * ((-1.4f64).exp() / 2.0 + 0.25) + 0.2 / 2.0;
        assert!((n.variance().unwrap() - expect).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let xs: Vec<f64> = (0..400_000).map(|_| n.sample(&mut rng)).collect();
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / xs.len() as f64;
        assert!((v / expect - 1.0).abs() < 0.03);
        assert!((m - 0.8f64.sqrt() * 0.3).abs() < 0.01);
    }

    #[test]
    fn cvqkd_gaussian_part() {
        let p = CvqkdParams {
            alpha: 1.0,
            theta: 1.5,
            r: 0.5,
            gain: 1.2,
            eta_e: 0.9,
            eta_b: 0.8,
            channel: ChannelNoise::gaussian(0.0, 0.0).unwrap(),
            p_s1: 0.5,
        };
        let n = cvqkd_noise(&p).unwrap();
        let inner = 0.9 * 1.2 * (-1.0f64).exp() + 0.9 * 0.2 + 0.1;
        assert!((n.gauss_var - (0.8 * inner + 0.2) / 2.0).abs() < 1e-15);
        assert!((n.channel_scale - (0.9f64 * 0.8 * 1.2).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn vanishing_noise_cf_tends_to_a_phase() {
        for ch in [
            ChannelNoise::gaussian(0.7, 1e-4).unwrap(),
            ChannelNoise::cauchy(0.7, 1e-6).unwrap(),
            ChannelNoise::uniform(0.7, 1e-4).unwrap(),
            ChannelNoise::shifted_exponential(0.7, 1e-4).unwrap(),
        ] {
            let n = CompositeNoise::new(1e-8, 0.9, ch).unwrap();
            for w in [0.5, 1.0, 3.0] {
                let want = Complex64::from_polar(1.0, w * 0.63);
                assert!((n.cf(w) - want).norm() < 1e-3, "{ch:?} at {w}");
            }
        }
    }

    #[test]
    fn point_mass_atom_is_included() {
        let n = CompositeNoise::new(0.0, 1.0, ChannelNoise::gaussian(0.5, 0.0).unwrap()).unwrap();
        assert!(n.is_point_mass());
        assert_eq!(n.cdf(0.5).unwrap(), 1.0);
        assert_eq!(n.cdf_below(0.5).unwrap(), 0.0);
        assert_eq!(n.cdf(0.4999).unwrap(), 0.0);
    }

    #[test]
    fn spread_axis_maps_onto_each_family() {
        let g = ChannelNoise::gaussian(0.0, 1.0)
            .unwrap()
            .with_spread(Spread::Std, 0.5)
            .unwrap();
        assert!((g.variance().unwrap() - 0.25).abs() < 1e-15);
        let c = ChannelNoise::cauchy(0.0, 1.0).unwrap();
        assert!(c.with_spread(Spread::Std, 0.5).is_err());
        assert!(matches!(
            c.with_spread(Spread::Dispersion, 0.5).unwrap(),
            ChannelNoise::Stable(StableParams { gamma, .. }) if gamma == 0.5
        ));
        assert!(ChannelNoise::uniform(0.0, 1.0)
            .unwrap()
            .with_spread(Spread::Dispersion, 0.5)
            .is_err());
    }

    #[test]
    fn invalid_composite_is_rejected() {
        let ch = ChannelNoise::gaussian(0.0, 1.0).unwrap();
        assert!(CompositeNoise::new(-1.0, 1.0, ch).is_err());
        assert!(CompositeNoise::new(f64::NAN, 1.0, ch).is_err());
        assert!(CompositeNoise::new(0.1, 0.0, ch).is_err());
    }
}
