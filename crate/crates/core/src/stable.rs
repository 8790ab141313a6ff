//! Alpha-stable channel noise.
//!
//! Parameterization follows the characteristic function
//!
//! ```text
//! φ(ω) = exp{ i·a·ω − γ·|ω|^α · (1 + i·β·sign(ω)·tan(απ/2)) }
//! ```
//!
//! with exponent `α ∈ (0, 2]`, skewness `β ∈ [−1, 1]`, dispersion `γ ≥ 0` and
//! location `a`. The skew term carries a `+` sign, opposite to the common
//! S1 convention; the two agree whenever `β = 0`. For `α = 2` the law is
//! Gaussian with mean `a` and variance `2γ`.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, Open01, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub location: f64,
}

impl StableParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, location: f64) -> Result<Self> {
        let params = StableParams {
            alpha,
            beta,
            gamma,
            location,
        };
        params.validate()?;
        Ok(params)
    }

    /// Gaussian law with the given mean and variance (`γ = variance / 2`).
    pub fn gaussian(mean: f64, variance: f64) -> Result<Self> {
        Self::new(2.0, 0.0, variance / 2.0, mean)
    }

    /// Cauchy law with the given location and scale (`γ` is the half width).
    pub fn cauchy(location: f64, gamma: f64) -> Result<Self> {
        Self::new(1.0, 0.0, gamma, location)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 2.0) {
            return Err(invalid("alpha", format!("{} not in (0, 2]", self.alpha)));
        }
        if !(-1.0..=1.0).contains(&self.beta) {
            return Err(invalid("beta", format!("{} not in [-1, 1]", self.beta)));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(invalid(
                "gamma",
                format!("{} must be finite and >= 0", self.gamma),
            ));
        }
        if !self.location.is_finite() {
            return Err(invalid("location", "must be finite"));
        }
        if self.alpha == 1.0 && self.beta != 0.0 {
            return Err(invalid(
                "beta",
                "skewed laws with alpha = 1 are not supported (tan(pi/2) is singular)",
            ));
        }
        Ok(())
    }

    pub fn is_gaussian(&self) -> bool {
        self.alpha == 2.0
    }

    /// Scale `σ = γ^{1/α}` of the standardized variate.
    pub fn scale(&self) -> f64 {
        self.gamma.powf(1.0 / self.alpha)
    }

    /// Mean, defined for `α > 1` (and for the degenerate `γ = 0` law).
    pub fn mean(&self) -> Option<f64> {
        (self.alpha > 1.0 || self.gamma == 0.0).then_some(self.location)
    }

    /// Variance, finite only in the Gaussian case.
    pub fn variance(&self) -> Option<f64> {
        if self.gamma == 0.0 {
            Some(0.0)
        } else {
            self.is_gaussian().then_some(2.0 * self.gamma)
        }
    }

    pub fn cf(&self, omega: f64) -> Complex64 {
        if omega == 0.0 {
            return Complex64::new(1.0, 0.0);
        }
        let magnitude = self.gamma * omega.abs().powf(self.alpha);
        let skew = if self.beta == 0.0 || self.alpha == 2.0 {
            0.0
        } else {
            self.beta * omega.signum() * (self.alpha * FRAC_PI_2).tan()
        };
        // exponent = i·a·ω − γ|ω|^α − i·γ|ω|^α·β·sign(ω)·tan(απ/2)
        Complex64::new(-magnitude, self.location * omega - magnitude * skew).exp()
    }

    /// Closed-form CDF where one exists: Gaussian, symmetric Cauchy and the
    /// degenerate `γ = 0` point mass (right-continuous at the atom).
    pub fn closed_form_cdf(&self, x: f64) -> Option<f64> {
        if self.gamma == 0.0 {
            return Some(if x >= self.location { 1.0 } else { 0.0 });
        }
        if self.is_gaussian() {
            let sd = (2.0 * self.gamma).sqrt();
            return Some(gaussian_cdf((x - self.location) / sd));
        }
        if self.alpha == 1.0 && self.beta == 0.0 {
            return Some(0.5 + ((x - self.location) / self.gamma).atan() / PI);
        }
        None
    }

    /// One standardized draw (`γ = 1`, `a = 0`) by the Chambers–Mallows–Stuck
    /// transformation.
    fn sample_standard<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let alpha = self.alpha;
        if alpha == 2.0 {
            let z: f64 = StandardNormal.sample(rng);
            return SQRT_2 * z;
        }
        let u: f64 = Open01.sample(rng);
        let v = PI * (u - 0.5);
        if alpha == 1.0 {
            return v.tan();
        }
        let w: f64 = Exp1.sample(rng);
        // The sampler works in the S1 convention, whose skew sign is opposite.
        let beta = -self.beta;
        let t = beta * (alpha * FRAC_PI_2).tan();
        let b = t.atan() / alpha;
        let s = (1.0 + t * t).powf(1.0 / (2.0 * alpha));
        let arg = alpha * (v + b);
        s * arg.sin() / v.cos().powf(1.0 / alpha)
            * ((v - arg).cos() / w).powf((1.0 - alpha) / alpha)
    }
}

impl Distribution<f64> for StableParams {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.gamma == 0.0 {
            return self.location;
        }
        self.location + self.scale() * self.sample_standard(rng)
    }
}

/// Characteristic function of the stable law at angular frequency `omega`.
pub fn stable_cf(params: &StableParams, omega: f64) -> Result<Complex64> {
    params.validate()?;
    Ok(params.cf(omega))
}

/// Draws one variate from the stable law.
pub fn sample_stable<R: Rng + ?Sized>(params: &StableParams, rng: &mut R) -> Result<f64> {
    params.validate()?;
    Ok(params.sample(rng))
}

/// Standard normal CDF.
pub fn gaussian_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

/// Standard normal survival function `1 − Φ(x)`, accurate in the upper tail.
pub fn gaussian_sf(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gaussian_cf_at_one() {
        let p = StableParams::new(2.0, 0.0, 0.5, 0.0).unwrap();
        let v = p.cf(1.0);
        assert!((v.re - (-0.5f64).exp()).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn cf_at_zero_is_one() {
        for p in [
            StableParams::new(0.7, 0.3, 2.0, -1.0).unwrap(),
            StableParams::new(1.5, -1.0, 0.1, 4.0).unwrap(),
            StableParams::cauchy(2.0, 1.0).unwrap(),
        ] {
            assert_eq!(p.cf(0.0), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn cauchy_cf() {
        let p = StableParams::cauchy(2.0, 1.0).unwrap();
        let expected = Complex64::new(-1.0, 2.0).exp();
        assert!((p.cf(1.0) - expected).norm() < 1e-15);
    }

    #[test]
    fn skew_term_sign_follows_the_printed_formula() {
        let p = StableParams::new(1.5, 0.5, 1.0, 0.0).unwrap();
        let w: f64 = 0.8;
        let m = w.powf(1.5);
        let expected = Complex64::new(-m, -m * 0.5 * (1.5 * FRAC_PI_2).tan()).exp();
        assert!((p.cf(w) - expected).norm() < 1e-15);
    }

    #[test]
    fn rejects_skewed_cauchy_and_bad_ranges() {
        assert!(StableParams::new(1.0, 0.2, 1.0, 0.0).is_err());
        assert!(StableParams::new(0.0, 0.0, 1.0, 0.0).is_err());
        assert!(StableParams::new(2.1, 0.0, 1.0, 0.0).is_err());
        assert!(StableParams::new(1.5, 1.1, 1.0, 0.0).is_err());
        assert!(StableParams::new(1.5, 0.0, -1.0, 0.0).is_err());
        let bad = StableParams {
            alpha: 1.0,
            beta: 0.5,
            gamma: 1.0,
            location: 0.0,
        };
        assert!(stable_cf(&bad, 1.0).is_err());
    }

    #[test]
    fn gaussian_cdf_values() {
        assert_eq!(gaussian_cdf(0.0), 0.5);
        assert!((gaussian_cdf(40.0) - 1.0).abs() <= 1e-12);
        assert!((gaussian_cdf(1.0) - 0.8413447460685429).abs() <= 1e-12);
        assert!((gaussian_cdf(-1.0) - 0.15865525393145705).abs() <= 1e-12);
        assert!((gaussian_sf(5.0) - 2.866515718791939e-7).abs() <= 1e-18);
    }

    #[test]
    fn gaussian_case_moments() {
        let p = StableParams::new(2.0, 0.0, 0.5, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 1_000_000;
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let x = p.sample(&mut rng);
            s += x;
            s2 += x * x;
        }
        let mean = s / n as f64;
        let var = s2 / n as f64 - mean * mean;
        assert!(mean.abs() < 0.005, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn cauchy_median_and_quartile() {
        let p = StableParams::cauchy(0.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut xs: Vec<f64> = (0..1_000_000).map(|_| p.sample(&mut rng)).collect();
        xs.sort_by(|a, b| a.total_cmp(b));
        let median = xs[xs.len() / 2];
        let below_one = xs.partition_point(|&x| x <= 1.0) as f64 / xs.len() as f64;
        assert!(median.abs() < 0.01, "median {median}");
        assert!((below_one - 0.75).abs() < 0.01, "F(1) {below_one}");
    }

    #[test]
    fn degenerate_law_is_a_point_mass() {
        let p = StableParams::new(1.5, 0.0, 0.0, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(p.sample(&mut rng), 2.0);
        assert_eq!(p.closed_form_cdf(2.0), Some(1.0));
        assert_eq!(p.closed_form_cdf(1.999), Some(0.0));
    }

    #[test]
    fn cf_magnitude_depends_only_on_dispersion() {
        let p = StableParams::new(0.8, -0.6, 0.7, 1.3).unwrap();
        for w in [-3.0, -0.5, 0.25, 1.0, 4.0] {
            let expected = (-0.7 * f64::abs(w).powf(0.8)).exp();
            assert!((p.cf(w).norm() - expected).abs() < 1e-14);
        }
    }
}
