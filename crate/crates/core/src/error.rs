use thiserror::Error;

/// Errors produced by the simulator and its numerics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("characteristic-function inversion did not converge: {0}")]
    NonConvergence(String),

    #[error("probabilities are not normalized (sum = {sum})")]
    NotNormalized { sum: f64 },

    #[error("malformed probability matrix: {0}")]
    MalformedMatrix(String),

    #[error("no trials recorded")]
    EmptyCounts,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("no admissible range for the channel gain product: {0}")]
    NoAdmissibleGain(String),

    #[error("trial budget {budget} too small: {needed} trials needed per evaluation, {per_eval} available")]
    BudgetTooSmall {
        budget: u64,
        needed: u64,
        per_eval: u64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("profile too short to classify: {0} points, need at least 5")]
    ProfileTooShort(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
