use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::smoothing::{smooth_grid, Smoothing};
use super::ModelSpec;
use crate::error::{invalid, Error, Result};
use crate::noise::Spread;
use crate::rng::substream;
use crate::stats::mean_and_se;

/// A grid of axis values. Reads either a plain array or
/// `{"start": a, "stop": b, "points": n}` (evenly spaced, both ends kept).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "GridRepr", into = "Vec<f64>")]
pub struct Grid(pub Vec<f64>);

#[derive(Deserialize)]
#[serde(untagged)]
enum GridRepr {
    Values(Vec<f64>),
    Linspace {
        start: f64,
        stop: f64,
        points: usize,
    },
}

impl From<GridRepr> for Grid {
    fn from(g: GridRepr) -> Self {
        match g {
            GridRepr::Values(v) => Grid(v),
            GridRepr::Linspace {
                start,
                stop,
                points,
            } => Grid::linspace(start, stop, points),
        }
    }
}

impl From<Grid> for Vec<f64> {
    fn from(g: Grid) -> Self {
        g.0
    }
}

impl Grid {
    pub fn linspace(start: f64, stop: f64, points: usize) -> Self {
        Grid(match points {
            0 => vec![],
            1 => vec![start],
            _ => (0..points)
                .map(|i| {
                    if i + 1 == points {
                        stop
                    } else {
                        start + (stop - start) * i as f64 / (points - 1) as f64
                    }
                })
                .collect(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::InvalidGrid(format!("{name} grid is empty")));
        }
        if self.0.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidGrid(format!(
                "{name} grid needs finite values >= 0"
            )));
        }
        if self.0.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(format!(
                "{name} grid is not strictly increasing"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseAxis {
    pub spread: Spread,
    pub values: Grid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub noise_axis: NoiseAxis,
    pub r_values: Grid,
    pub trials_per_run: u64,
    pub runs: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub smoothing: Smoothing,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.noise_axis.values.validate("noise")?;
        self.r_values.validate("r")?;
        if self.trials_per_run < 100 {
            return Err(invalid(
                "trials_per_run",
                format!("{} < 100", self.trials_per_run),
            ));
        }
        if self.runs == 0 {
            return Err(invalid("runs", "must be positive"));
        }
        self.smoothing.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub noise: f64,
    pub r: f64,
    pub mi_mean: f64,
    pub mi_se: f64,
    pub runs: u32,
    pub trials: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    /// SHA-256 of the canonical JSON of the model and sweep spec.
    pub spec_hash: String,
    /// Unix seconds; set when the result is written out.
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub noise_values: Vec<f64>,
    pub r_values: Vec<f64>,
    /// Row-major over `r`, noise varying fastest.
    pub cells: Vec<SweepCell>,
    pub provenance: Provenance,
}

impl SweepResult {
    pub fn cell(&self, r_index: usize, noise_index: usize) -> &SweepCell {
        &self.cells[r_index * self.noise_values.len() + noise_index]
    }

    /// MI means and standard errors along the noise axis at one `r`.
    pub fn profile(&self, r_index: usize) -> (Vec<f64>, Vec<f64>) {
        let n = self.noise_values.len();
        let row = &self.cells[r_index * n..(r_index + 1) * n];
        (
            row.iter().map(|c| c.mi_mean).collect(),
            row.iter().map(|c| c.mi_se).collect(),
        )
    }

    pub fn argmax(&self) -> &SweepCell {
        self.cells
            .iter()
            .max_by(|a, b| a.mi_mean.total_cmp(&b.mi_mean))
            .expect("sweep has at least one cell")
    }

    pub fn stamp(&mut self) {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.provenance.timestamp = Some(now);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("noise,r,mi_mean,mi_se,runs,trials\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                c.noise, c.r, c.mi_mean, c.mi_se, c.runs, c.trials
            );
        }
        out
    }
}

pub fn spec_hash(spec: &SweepSpec, model: &ModelSpec) -> String {
    #[derive(Serialize)]
    struct Canonical<'a> {
        model: &'a ModelSpec,
        sweep: &'a SweepSpec,
    }
    let bytes =
        serde_json::to_vec(&Canonical { model, sweep: spec }).expect("spec types serialize");
    hex::encode(Sha256::digest(&bytes))
}

/// Runs `runs × trials_per_run` trials at every grid point. Each
/// (cell, run) pair draws from its own substream, so the result does not
/// depend on the thread count.
pub fn run_sweep(spec: &SweepSpec, model: &ModelSpec) -> Result<SweepResult> {
    spec.validate()?;
    model.validate()?;
    let noise = spec.noise_axis.values.values();
    let rs = spec.r_values.values();
    let mut sims = Vec::with_capacity(noise.len() * rs.len());
    for &r in rs {
        for &level in noise {
            sims.push(
                model
                    .with_r(r)
                    .with_noise_level(spec.noise_axis.spread, level)?
                    .simulator()?,
            );
        }
    }
    let runs = spec.runs as u64;
    let mi: Vec<f64> = (0..sims.len() as u64 * runs)
        .into_par_iter()
        .map(|task| {
            let mut rng = substream(spec.seed, task);
            sims[(task / runs) as usize].estimate_mi(spec.trials_per_run, &mut rng)
        })
        .collect::<Result<_>>()?;
    let (mut means, mut ses): (Vec<f64>, Vec<f64>) =
        mi.chunks(spec.runs as usize).map(mean_and_se).unzip();
    if let Smoothing::GridKernel { bandwidth } = spec.smoothing {
        (means, ses) = smooth_grid(&means, &ses, rs.len(), noise.len(), bandwidth);
    }
    let cells = rs
        .iter()
        .flat_map(|&r| noise.iter().map(move |&n| (n, r)))
        .zip(means.into_iter().zip(ses))
        .map(|((noise, r), (mi_mean, mi_se))| SweepCell {
            noise,
            r,
            mi_mean,
            mi_se,
            runs: spec.runs,
            trials: spec.trials_per_run,
        })
        .collect();
    Ok(SweepResult {
        noise_values: noise.to_vec(),
        r_values: rs.to_vec(),
        cells,
        provenance: Provenance {
            seed: spec.seed,
            spec_hash: spec_hash(spec, model),
            timestamp: None,
        },
    })
}
