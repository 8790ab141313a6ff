//! Forbidden intervals and the gain constraints behind the limit arguments.
//!
//! With a subthreshold signal `α < θ`, the mutual information collapses to
//! zero as every noise source vanishes exactly when the noise mean (or
//! stable location) lies outside the forbidden interval(s); inside, the
//! channel becomes noiseless instead and no noise benefit is possible.

use serde::{Deserialize, Serialize};

use crate::basic::BasicModelParams;
use crate::cvqkd::CvqkdParams;
use crate::error::{Error, Result};

/// Locations within this distance of an endpoint are flagged as unreliable.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Basic,
    Cvqkd,
}

/// Open interval `(lower, upper)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lower < x && x < self.upper
    }

    pub fn near_endpoint(&self, x: f64) -> bool {
        (x - self.lower).abs() <= BOUNDARY_TOL || (x - self.upper).abs() <= BOUNDARY_TOL
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// The forbidden set for one model at fixed amplitude and threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForbiddenIntervals {
    pub model: ModelKind,
    pub alpha: f64,
    pub theta: f64,
    pub intervals: Vec<Interval>,
}

impl ForbiddenIntervals {
    pub fn subthreshold(&self) -> bool {
        self.alpha < self.theta
    }

    pub fn is_forbidden(&self, x: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn verdict(&self, location: f64) -> IntervalVerdict {
        let boundary_flag = self.intervals.iter().any(|i| i.near_endpoint(location));
        IntervalVerdict {
            model: self.model,
            intervals: self.intervals.clone(),
            location_tested: location,
            sr_predicted: !self.is_forbidden(location),
            boundary_flag,
            subthreshold: self.subthreshold(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalVerdict {
    pub model: ModelKind,
    pub intervals: Vec<Interval>,
    pub location_tested: f64,
    pub sr_predicted: bool,
    pub boundary_flag: bool,
    /// Whether `α < θ`; the prediction is only backed by the theorem then.
    pub subthreshold: bool,
}

impl IntervalVerdict {
    pub fn reliable(&self) -> bool {
        !self.boundary_flag && self.subthreshold
    }
}

/// `(θ − α_x, θ + α_x)`.
pub fn basic_interval(alpha_x: f64, theta: f64) -> ForbiddenIntervals {
    ForbiddenIntervals {
        model: ModelKind::Basic,
        alpha: alpha_x,
        theta,
        intervals: vec![Interval {
            lower: theta - alpha_x,
            upper: theta + alpha_x,
        }],
    }
}

/// `(−θ − α, −θ + α) ∪ (θ − α, θ + α)`.
pub fn cvqkd_interval(alpha: f64, theta: f64) -> ForbiddenIntervals {
    ForbiddenIntervals {
        model: ModelKind::Cvqkd,
        alpha,
        theta,
        intervals: vec![
            Interval {
                lower: -theta - alpha,
                upper: -(theta - alpha),
            },
            Interval {
                lower: theta - alpha,
                upper: theta + alpha,
            },
        ],
    }
}

/// Where a location sits relative to the key-distribution intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocationCase {
    /// `μ < −θ − α`.
    BelowBoth,
    /// `−θ + α < μ < θ − α`.
    Between,
    /// `μ > θ + α`.
    AboveBoth,
    /// `μ ∈ (−θ − α, −θ + α)`.
    InNegative,
    /// `μ ∈ (θ − α, θ + α)`.
    InPositive,
}

impl LocationCase {
    pub fn classify(alpha: f64, theta: f64, mu: f64) -> Option<Self> {
        let ints = cvqkd_interval(alpha, theta);
        if ints.intervals.iter().any(|i| i.near_endpoint(mu)) {
            return None;
        }
        Some(if ints.intervals[0].contains(mu) {
            LocationCase::InNegative
        } else if ints.intervals[1].contains(mu) {
            LocationCase::InPositive
        } else if mu < -theta - alpha {
            LocationCase::BelowBoth
        } else if mu > theta + alpha {
            LocationCase::AboveBoth
        } else {
            LocationCase::Between
        })
    }

    pub fn sr_predicted(self) -> bool {
        !matches!(self, LocationCase::InNegative | LocationCase::InPositive)
    }
}

/// Open range `(lower, upper)` of a positive gain factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainRange {
    pub lower: f64,
    pub upper: f64,
}

impl GainRange {
    pub const ANY: GainRange = GainRange {
        lower: 0.0,
        upper: f64::INFINITY,
    };

    fn above(lower: f64) -> Self {
        GainRange {
            lower,
            upper: f64::INFINITY,
        }
    }

    fn below(upper: f64) -> Self {
        GainRange { lower: 0.0, upper }
    }

    pub fn contains(&self, k: f64) -> bool {
        self.lower < k && k < self.upper
    }

    pub fn is_empty(&self) -> bool {
        self.lower >= self.upper
    }

    pub fn intersect(&self, other: &GainRange) -> GainRange {
        GainRange {
            lower: self.lower.max(other.lower),
            upper: self.upper.min(other.upper),
        }
    }
}

/// A single limit claim and the gain range under which its proof holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainClaim {
    pub claim: String,
    pub range: GainRange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainConstraints {
    pub case: LocationCase,
    pub claims: Vec<GainClaim>,
}

impl GainConstraints {
    /// Intersection of all claim ranges.
    pub fn admissible(&self) -> GainRange {
        self.claims
            .iter()
            .fold(GainRange::ANY, |acc, c| acc.intersect(&c.range))
    }

    pub fn admits(&self, k: f64) -> bool {
        self.admissible().contains(k)
    }
}

/// `θ / |x|`, infinite when `x = 0`.
fn ratio(theta: f64, x: f64) -> f64 {
    if x == 0.0 {
        f64::INFINITY
    } else {
        theta / x.abs()
    }
}

/// Ranges of `k = √(η_E η_B G)` under which each limit claim for the
/// location `mu` goes through.
pub fn theorem2_constraints(params: &CvqkdParams, mu: f64) -> Result<GainConstraints> {
    params.validate()?;
    let (a, t) = (params.alpha, params.theta);
    if !params.is_subthreshold() {
        return Err(Error::NoAdmissibleGain(format!(
            "signal amplitude {a} is not below threshold {t}"
        )));
    }
    let case = LocationCase::classify(a, t, mu).ok_or_else(|| {
        Error::NoAdmissibleGain(format!("location {mu} sits on an interval endpoint"))
    })?;
    let claim = |c: &str, range| GainClaim {
        claim: c.to_string(),
        range,
    };
    let claims = match case {
        LocationCase::BelowBoth => vec![
            claim("p(0|0) - p(0|1) -> 0", GainRange::above(ratio(t, mu + a))),
            claim("p(1|1) - p(1|0) -> 0", GainRange::ANY),
        ],
        LocationCase::Between => vec![
            claim("p(0|0) - p(0|1) -> 0", GainRange::below(ratio(t, mu - a))),
            claim("p(1|1) - p(1|0) -> 0", GainRange::below(ratio(t, mu + a))),
        ],
        LocationCase::AboveBoth => vec![
            claim("p(0|0) - p(0|1) -> 0", GainRange::ANY),
            claim("p(1|1) - p(1|0) -> 0", GainRange::above(ratio(t, mu - a))),
        ],
        LocationCase::InNegative => vec![
            claim("p(0|0) -> 1", GainRange::above(ratio(t, a - mu))),
            claim("p(0|1) -> 0", GainRange::below(ratio(t, mu + a))),
            claim("p(1|1) -> 0", GainRange::above(ratio(t, a - mu))),
        ],
        LocationCase::InPositive => vec![
            claim("p(0|0) -> 0", GainRange::above(ratio(t, mu + a))),
            claim("p(1|0) -> 0", GainRange::below(ratio(t, mu - a))),
            claim("p(1|1) -> 1", GainRange::above(ratio(t, mu + a))),
        ],
    };
    let out = GainConstraints { case, claims };
    if out.admissible().is_empty() {
        return Err(Error::NoAdmissibleGain(format!(
            "constraints for {case:?} at location {mu} do not overlap"
        )));
    }
    Ok(out)
}

/// Ranges of `√η` for the basic model. Only the claims for a mean above the
/// interval and for `p(1|1) → 1` inside it restrict the efficiency.
pub fn theorem1_constraints(params: &BasicModelParams, mu: f64) -> Result<Vec<GainClaim>> {
    params.validate()?;
    let (a, t) = (params.alpha_x, params.theta);
    let interval = basic_interval(a, t);
    if interval.intervals[0].near_endpoint(mu) {
        return Err(Error::NoAdmissibleGain(format!(
            "location {mu} sits on an interval endpoint"
        )));
    }
    let claim = |c: &str, range| GainClaim {
        claim: c.to_string(),
        range,
    };
    Ok(if mu < t - a {
        vec![claim("p(0|0) - p(0|1) -> 0", GainRange::ANY)]
    } else if mu > t + a {
        vec![claim(
            "p(0|0) - p(0|1) -> 0",
            GainRange::above(ratio(t, mu - a)),
        )]
    } else {
        vec![
            claim("p(0|0) -> 1", GainRange::ANY),
            claim("p(1|1) -> 1", GainRange::above(ratio(t, mu + a))),
        ]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::ChannelNoise;
    use proptest::prelude::*;

    fn cv(alpha: f64, theta: f64) -> CvqkdParams {
        CvqkdParams {
            alpha,
            theta,
            r: 1.0,
            gain: 1.0,
            eta_e: 1.0,
            eta_b: 1.0,
            channel: ChannelNoise::gaussian(0.0, 1.0).unwrap(),
            p_s1: 0.5,
        }
    }

    #[test]
    fn figure_one_interval() {
        let f = basic_interval(1.1, 1.6);
        assert_eq!(
            f.intervals,
            vec![Interval {
                lower: 1.6 - 1.1,
                upper: 1.6 + 1.1
            }]
        );
        assert!((f.intervals[0].lower - 0.5).abs() < 1e-15);
        assert!((f.intervals[0].upper - 2.7).abs() < 1e-15);
        let v = f.verdict(0.0);
        assert!(v.sr_predicted && !v.boundary_flag && v.reliable());
        assert!(!f.verdict(1.6).sr_predicted);
    }

    #[test]
    fn degenerate_amplitude() {
        let f = basic_interval(0.0, 1.6);
        assert_eq!(f.intervals[0].width(), 0.0);
        assert!(f.verdict(1.6).sr_predicted);
        assert!(f.verdict(1.6).boundary_flag);
    }

    #[test]
    fn figure_two_intervals() {
        let f = cvqkd_interval(1.1, 1.6);
        assert!((f.intervals[0].lower + 2.7).abs() < 1e-15);
        assert!((f.intervals[0].upper + 0.5).abs() < 1e-15);
        assert!((f.intervals[1].lower - 0.5).abs() < 1e-15);
        assert!((f.intervals[1].upper - 2.7).abs() < 1e-15);
        assert!(f.verdict(0.0).sr_predicted);
        assert!(!f.verdict(2.0).sr_predicted);
    }

    #[test]
    fn boundary_is_flagged() {
        let f = basic_interval(1.1, 1.6);
        let v = f.verdict(1.6 - 1.1);
        assert!(v.boundary_flag);
        assert!(!v.reliable());
        let v = basic_interval(1.7, 1.6).verdict(0.0);
        assert!(!v.subthreshold && !v.reliable());
    }

    #[test]
    fn positive_interval_gain_range() {
        let c = theorem2_constraints(&cv(1.1, 1.6), 2.0).unwrap();
        assert_eq!(c.case, LocationCase::InPositive);
        let r = c.admissible();
        assert!((r.lower - 1.6 / 3.1).abs() < 1e-12);
        assert!((r.upper - 1.6 / 0.9).abs() < 1e-12);
        assert!(c.admits(1.0));
    }

    #[test]
    fn below_both_gain_range() {
        let c = theorem2_constraints(&cv(1.1, 1.6), -3.0).unwrap();
        assert_eq!(c.case, LocationCase::BelowBoth);
        let r = c.admissible();
        assert!((r.lower - 1.6 / 1.9).abs() < 1e-12);
        assert_eq!(r.upper, f64::INFINITY);
    }

    #[test]
    fn endpoint_and_suprathreshold_have_no_range() {
        assert!(theorem2_constraints(&cv(1.1, 1.6), 0.5).is_err());
        assert!(theorem2_constraints(&cv(1.7, 1.6), 0.0).is_err());
    }

    #[test]
    fn between_case_at_zero() {
        let c = theorem2_constraints(&cv(1.1, 1.6), 0.0).unwrap();
        assert_eq!(c.case, LocationCase::Between);
        assert!((c.admissible().upper - 1.6 / 1.1).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn cvqkd_union_is_mirror_symmetric(a in 0.01f64..3.0, gap in 0.01f64..3.0, x in -10.0f64..10.0) {
            let f = cvqkd_interval(a, a + gap);
            prop_assert_eq!(f.is_forbidden(x), f.is_forbidden(-x));
        }

        #[test]
        fn endpoints_are_exact(a in 0.0f64..5.0, t in -5.0f64..5.0) {
            let f = basic_interval(a, t);
            prop_assert_eq!(f.intervals[0].lower, t - a);
            prop_assert_eq!(f.intervals[0].upper, t + a);
        }

        #[test]
        fn unit_gain_is_admissible_away_from_endpoints(a in 0.3f64..1.5, gap in 0.3f64..1.0, u in 0.0f64..1.0, side in 0usize..5) {
            let t = a + gap;
            let m = 0.1;
            let mu = match side {
                0 => -t - a - m - 2.0 * u,
                1 => (-(t - a) + m) + u * (2.0 * (t - a) - 2.0 * m),
                2 => t + a + m + 2.0 * u,
                3 => (-t - a + m) + u * (2.0 * a - 2.0 * m),
                _ => (t - a + m) + u * (2.0 * a - 2.0 * m),
            };
            let c = theorem2_constraints(&cv(a, t), mu).unwrap();
            prop_assert!(c.admits(1.0));
            prop_assert_eq!(c.case.sr_predicted(), !cvqkd_interval(a, t).is_forbidden(mu));
        }
    }
}
