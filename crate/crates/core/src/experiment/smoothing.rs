use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Post-processing applied to the run-averaged MI surface.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Smoothing {
    #[default]
    None,
    /// Gaussian kernel over grid indices; `bandwidth` is in grid cells.
    GridKernel {
        #[serde(default = "one")]
        bandwidth: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl Smoothing {
    pub const DEFAULT_KERNEL: Smoothing = Smoothing::GridKernel { bandwidth: 1.0 };

    pub fn validate(&self) -> Result<()> {
        match *self {
            Smoothing::None => Ok(()),
            Smoothing::GridKernel { bandwidth } if bandwidth > 0.0 && bandwidth.is_finite() => {
                Ok(())
            }
            Smoothing::GridKernel { bandwidth } => {
                Err(invalid("bandwidth", format!("{bandwidth} must be > 0")))
            }
        }
    }
}

fn weights(bandwidth: f64) -> Vec<f64> {
    let half = (3.0 * bandwidth).ceil() as i64;
    (-half..=half)
        .map(|d| (-0.5 * (d as f64 / bandwidth).powi(2)).exp())
        .collect()
}

fn smooth_axis(
    values: &[f64],
    se: &[f64],
    n: usize,
    stride: usize,
    count: usize,
    w: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let half = (w.len() / 2) as i64;
    let mut out = values.to_vec();
    let mut out_se = se.to_vec();
    for line in 0..count {
        let base = if stride == 1 { line * n } else { line };
        for i in 0..n as i64 {
            let (mut acc, mut acc_se, mut norm) = (0.0, 0.0, 0.0);
            for (j, wj) in w.iter().enumerate() {
                let k = i + j as i64 - half;
                if k < 0 || k >= n as i64 {
                    continue;
                }
                let idx = base + k as usize * stride;
                acc += wj * values[idx];
                acc_se += wj * wj * se[idx] * se[idx];
                norm += wj;
            }
            let idx = base + i as usize * stride;
            out[idx] = acc / norm;
            out_se[idx] = acc_se.sqrt() / norm;
        }
    }
    (out, out_se)
}

/// Separable Gaussian smoothing of an `rows × cols` row-major surface,
/// truncated at three bandwidths and renormalized at the edges. Standard
/// errors are propagated as if cells were independent.
pub fn smooth_grid(
    values: &[f64],
    se: &[f64],
    rows: usize,
    cols: usize,
    bandwidth: f64,
) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(values.len(), rows * cols);
    assert_eq!(se.len(), rows * cols);
    let w = weights(bandwidth);
    let (v, s) = smooth_axis(values, se, cols, 1, rows, &w);
    smooth_axis(&v, &s, rows, cols, cols, &w)
}
