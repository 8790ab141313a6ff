use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest MI gain over both endpoints counted as a noise benefit.
pub const DEFAULT_MIN_BITS: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SrClass {
    Detected,
    NotDetected,
    /// Every pair of points agrees within the noise band.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SrReport {
    pub class: SrClass,
    /// Best qualifying interior point when detected, else the global argmax.
    pub peak_index: usize,
    pub peak_mi: f64,
    /// Peak MI minus the left and right endpoint MI.
    pub rise_left: f64,
    pub rise_right: f64,
}

impl SrReport {
    pub fn detected(&self) -> bool {
        self.class == SrClass::Detected
    }
}

fn band(se_a: f64, se_b: f64, min_bits: f64) -> f64 {
    (3.0 * (se_a * se_a + se_b * se_b).sqrt()).max(min_bits)
}

/// Looks for an interior point exceeding both endpoints by at least
/// `max(3 combined SE, 0.01 bits)`.
pub fn detect_sr(mi: &[f64], se: &[f64]) -> Result<SrReport> {
    detect_sr_with(mi, se, DEFAULT_MIN_BITS)
}

pub fn detect_sr_with(mi: &[f64], se: &[f64], min_bits: f64) -> Result<SrReport> {
    let n = mi.len();
    if n < 5 {
        return Err(Error::ProfileTooShort(n));
    }
    if se.len() != n {
        return Err(Error::InvalidGrid(format!(
            "{} errors for {n} points",
            se.len()
        )));
    }
    if mi.iter().chain(se).any(|v| !v.is_finite()) || se.iter().any(|&s| s < 0.0) {
        return Err(Error::InvalidGrid(
            "non-finite value or negative error".into(),
        ));
    }
    let last = n - 1;
    let report = |class, i: usize| SrReport {
        class,
        peak_index: i,
        peak_mi: mi[i],
        rise_left: mi[i] - mi[0],
        rise_right: mi[i] - mi[last],
    };
    let best = (1..last)
        .filter(|&i| {
            mi[i] - mi[0] >= band(se[i], se[0], min_bits)
                && mi[i] - mi[last] >= band(se[i], se[last], min_bits)
        })
        .max_by(|&a, &b| mi[a].total_cmp(&mi[b]));
    if let Some(i) = best {
        return Ok(report(SrClass::Detected, i));
    }
    let argmax = (0..n).max_by(|&a, &b| mi[a].total_cmp(&mi[b])).unwrap_or(0);
    let flat = (0..n).all(|i| (0..n).all(|j| (mi[i] - mi[j]).abs() < band(se[i], se[j], min_bits)));
    let class = if flat {
        SrClass::Inconclusive
    } else {
        SrClass::NotDetected
    };
    Ok(report(class, argmax))
}
