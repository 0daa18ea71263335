use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("range [{lo}, {hi}] exceeds the supported cap of {cap}")]
    Capacity { lo: u64, hi: u64, cap: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("height {t} is beyond the zero-table horizon {horizon}")]
    Horizon { t: f64, horizon: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("validation error{}: {msg}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Validation { line: Option<usize>, msg: String },

    #[error("checkpoint table does not cover {needed}; covered range is [{lo}, {hi}]")]
    Coverage { needed: u64, lo: u64, hi: u64 },

    #[error("no solution found below the search limit {limit:e}")]
    SolverRange { limit: f64 },

    #[error("no decomposition for n = {n} within the first {tried} candidate primes")]
    Exhausted { n: u64, tried: usize },

    #[error("cannot step: upper bound for f(x0) is {f_hi} >= 0")]
    CannotStep { f_hi: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
