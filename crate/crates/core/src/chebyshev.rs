//! Chebyshev bounds `Pr{|N − μ_N| ≥ ε} ≤ σ²/ε²` behind the limit claims,
//! evaluated at finite noise so they can be checked against the exact
//! transition probabilities.

use serde::{Deserialize, Serialize};

use crate::basic::{BasicModel, BasicModelParams};
use crate::cvqkd::{CvqkdModel, CvqkdParams};
use crate::error::{invalid, Result};
use crate::interval::LocationCase;

/// One claim: `observed ≤ σ²/ε²` whenever `ε > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub claim: String,
    pub epsilon: f64,
    pub bound: f64,
    /// The probability (or difference, or `1 − p`) the bound controls.
    pub observed: f64,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.observed <= self.bound + 1e-12
    }
}

fn check(claim: &str, epsilon: f64, variance: f64, observed: f64) -> Option<BoundCheck> {
    (epsilon > 0.0).then(|| BoundCheck {
        claim: claim.to_string(),
        epsilon,
        bound: variance / (epsilon * epsilon),
        observed,
    })
}

fn finite_moments(mean: Option<f64>, var: Option<f64>) -> Result<(f64, f64)> {
    match (mean, var) {
        (Some(m), Some(v)) if v.is_finite() => Ok((m, v)),
        _ => Err(invalid(
            "channel",
            "Chebyshev bounds need a finite variance",
        )),
    }
}

/// Bounds for the basic model. Claims whose `ε` is not positive at these
/// parameters are left out.
pub fn basic_bounds(params: &BasicModelParams) -> Result<Vec<BoundCheck>> {
    let model = BasicModel::new(*params)?;
    let (mu, _) = finite_moments(params.channel.mean(), params.channel.variance())?;
    let var = model.noise().variance().unwrap_or(f64::INFINITY);
    let p = model.conditional_probs()?;
    let (p00, p01, p11) = (p.get(0, 0), p.get(1, 0), p.get(1, 1));
    let s = params.eta.sqrt();
    let (a, t) = (params.alpha_x, params.theta);
    let out = if mu < t - a {
        vec![check(
            "p(0|0) - p(0|1)",
            (t - s * a - s * mu) / 2.0,
            var,
            p00 - p01,
        )]
    } else if mu > t + a {
        vec![check(
            "p(0|0) - p(0|1)",
            (s * mu - t - s * a) / 2.0,
            var,
            p00 - p01,
        )]
    } else {
        vec![
            check("1 - p(0|0)", (t + s * a - s * mu) / 2.0, var, 1.0 - p00),
            check("1 - p(1|1)", (s * mu + s * a - t) / 2.0, var, 1.0 - p11),
        ]
    };
    Ok(out.into_iter().flatten().collect())
}

/// Bounds for the key-distribution model, chosen by the location case.
pub fn cvqkd_bounds(params: &CvqkdParams) -> Result<Vec<BoundCheck>> {
    let model = CvqkdModel::new(*params)?;
    let (mu, _) = finite_moments(params.channel.mean(), params.channel.variance())?;
    let var = model.noise().variance().unwrap_or(f64::INFINITY);
    let (a, t) = (params.alpha, params.theta);
    let case = LocationCase::classify(a, t, mu)
        .ok_or_else(|| invalid("channel", format!("mean {mu} sits on an interval endpoint")))?;
    let p = model.conditional_probs()?;
    let (p00, p01, p10, p11) = (p.get(0, 0), p.get(1, 0), p.get(0, 1), p.get(1, 1));
    let k = params.gain_product();
    let (km, ka) = (k * mu, k * a);
    let out = match case {
        LocationCase::BelowBoth => vec![
            check("p(0|0) - p(0|1)", (-t - ka - km) / 2.0, var, p00 - p01),
            check("p(1|1) - p(1|0)", (t - ka - km) / 2.0, var, p11 - p10),
        ],
        LocationCase::Between => vec![
            check("p(0|0) - p(0|1)", (t - ka + km) / 2.0, var, p00 - p01),
            check("p(1|1) - p(1|0)", (t - ka - km) / 2.0, var, p11 - p10),
        ],
        LocationCase::AboveBoth => vec![
            check("p(0|0) - p(0|1)", (km + t - ka) / 2.0, var, p00 - p01),
            check("p(1|1) - p(1|0)", (km - t - ka) / 2.0, var, p11 - p10),
        ],
        LocationCase::InNegative => vec![
            check("1 - p(0|0)", (-t + ka - km) / 2.0, var, 1.0 - p00),
            check("p(0|1)", (km + ka + t) / 2.0, var, p01),
            check("p(1|1)", (-km + ka - t) / 2.0, var, p11),
        ],
        LocationCase::InPositive => vec![
            check("p(0|0)", (km + ka - t) / 2.0, var, p00),
            check("p(1|0)", (-km + ka + t) / 2.0, var, p10),
            check("1 - p(1|1)", (km + ka - t) / 2.0, var, 1.0 - p11),
        ],
    };
    Ok(out.into_iter().flatten().collect())
}
