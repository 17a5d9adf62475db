use thiserror::Error;

use crate::binform::ProjPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("root finder stopped after {iterations} iterations with residual {residual:e}")]
    RootsNotConverged {
        iterations: usize,
        residual: f64,
        best: Vec<ProjPoint>,
    },

    #[error("group closure has {size} elements, expected {expected}")]
    GroupClosure { size: usize, expected: usize },

    #[error("calibration failed after {iterations} steps (residual {residual:e})")]
    Calibration { iterations: usize, residual: f64 },

    #[error("critical set: {0}")]
    CriticalSet(String),

    #[error("labeling: {0}")]
    Labeling(String),

    #[error("fit of {name} failed at coefficient {index}: holdout residual {residual:e}")]
    FitFailed { name: String, index: usize, residual: f64 },

    #[error("degenerate parameter Z = {z}: {reason}")]
    DegenerateParameter { z: String, reason: String },

    #[error("orbit did not settle on a five-cycle within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("extraction undefined: {0}")]
    Extraction(String),

    #[error(transparent)]
    Cache(#[from] CacheError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache is not valid JSON: {0}")]
    Parse(String),

    #[error("cache format version {found} is not supported (expected {expected})")]
    Version { found: u32, expected: u32 },

    #[error(
        "cache was derived at {stored} digits but {requested} were requested; \
         re-run `derive --digits {requested}`"
    )]
    Precision { stored: u32, requested: u32 },

    #[error("cache checksum mismatch (stored {stored}, computed {computed})")]
    Checksum { stored: String, computed: String },

    #[error("malformed cache: {0}")]
    Malformed(String),
}
