use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by table construction, the experiment operations and the runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("index {index} outside table range 1..={limit}")]
    OutOfRange { index: u64, limit: u64 },

    #[error("exact-integer capacity exceeded at n = {n}")]
    Overflow { n: u64 },

    #[error("g is not strictly increasing near x = {x}")]
    NotMonotone { x: f64 },

    #[error("Newton inversion of g did not converge for y = {y} after {iterations} iterations")]
    NoConvergence { y: f64, iterations: u32 },

    #[error("ambiguous floor: g({n}) = {value:e} is indistinguishable from an integer in extended precision")]
    AmbiguousFloor { n: u64, value: f64 },

    #[error("floor guard failed for n = {n}: m = {m} does not satisfy f(m) <= n < f(m+1)")]
    FloorGuard { n: u64, m: u64 },

    #[error("[g({n})] = {value:e} exceeds the deterministic primality range 2^64")]
    PrimalityRange { n: u64, value: f64 },

    #[error("table limit {limit} too small: need {required}")]
    TableUnderflow { limit: u64, required: u64 },

    #[error("parameter constraint violated: {constraint} ({detail})")]
    Constraint { constraint: &'static str, detail: String },

    #[error("quadrature did not converge (error estimate {estimate:e})")]
    Quadrature { estimate: f64 },

    #[error("table validation failed at n = {n}: {reason}")]
    Validation { n: u64, reason: String },

    #[error("cache: {0}")]
    Cache(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
