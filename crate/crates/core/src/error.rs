use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the model, welfare, simulation and data layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vector length {got} does not match n = {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("observation (k = {k}, a = {a}) has zero probability under both clusters")]
    ImpossibleObservation { k: usize, a: usize },

    #[error("mistake count {mistakes} outside [0, {max}]")]
    MistakesOutOfRange { mistakes: usize, max: usize },

    #[error(
        "an outcome with zero utility has positive probability at gamma = {gamma}; \
         enable the zero_shift convention to evaluate welfare for gamma >= 1"
    )]
    ZeroUtility { gamma: f64 },

    #[error("negative utility {utility} cannot be raised to the power 1 - gamma (gamma = {gamma})")]
    NegativeUtility { utility: f64, gamma: f64 },

    #[error("n = {n} exceeds the exhaustive enumeration budget of {max}")]
    EnumerationBudget { n: usize, max: usize },

    #[error("gini coefficient is undefined: {0}")]
    UndefinedGini(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config: {0}")]
    Config(String),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
