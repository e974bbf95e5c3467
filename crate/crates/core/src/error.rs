use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element of valuation {0:?} is not a unit")]
    NotUnit(Option<usize>),

    #[error("generators have gcd {0}, not 1")]
    GcdNotOne(u32),

    #[error("budget exceeded: {what} ({needed} > {limit})")]
    Budget { what: &'static str, needed: u128, limit: u128 },

    #[error("wall-clock budget of {0} s exceeded")]
    Timeout(u64),

    #[error("gate failed: {0}")]
    Gate(String),

    /// An internal consistency check failed; this signals a bug, not bad input.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::Timeout(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
