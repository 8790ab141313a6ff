//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "model": {
//!     "kind": "basic", "alpha_x": 1.1, "theta": 1.6, "eta": 1.0,
//!     "channel": { "kind": "stable", "alpha": 2.0, "beta": 0.0, "gamma": 0.5, "location": 0.0 }
//!   },
//!   "sweep": {
//!     "noise_axis": { "spread": "std", "values": { "start": 0.01, "stop": 3.0, "points": 25 } },
//!     "r_values": { "start": 0.0, "stop": 1.5, "points": 10 },
//!     "trials_per_run": 10000, "runs": 100, "seed": 1,
//!     "smoothing": { "kind": "none" }
//!   },
//!   "simulate": { "trials": 100000, "seed": 1 }
//! }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::{ModelSpec, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulateSpec {
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub simulate: Option<SimulateSpec>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Checks the model, the sweep, and that the noise axis fits the channel law.
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if let Some(sweep) = &self.sweep {
            sweep.validate()?;
            for &r in sweep.r_values.values() {
                for &v in sweep.noise_axis.values.values() {
                    self.model
                        .with_r(r)
                        .with_noise_level(sweep.noise_axis.spread, v)?
                        .validate()?;
                }
            }
        }
        if let Some(sim) = &self.simulate {
            if sim.trials == 0 {
                return Err(Error::Config("simulate.trials must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        if let Some(s) = &mut self.sweep {
            s.seed = seed;
        }
        if let Some(s) = &mut self.simulate {
            s.seed = seed;
        }
        self
    }
}
