use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("{what} exceeds cap ({size} > {cap})")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("symbol index {index} out of range for alphabet of size {size}")]
    SymbolOutOfRange { index: usize, size: usize },

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("block {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },

    #[error("pattern is not locally valid")]
    NotLocallyValid,

    #[error("invalid sublattice: {0}")]
    InvalidSublattice(String),

    #[error("transfer operator has no recurrent states (empty language)")]
    ZeroOperator,

    #[error("power iteration did not converge after {iterations} iterations (bracket [{lower}, {upper}])")]
    NonConvergence {
        iterations: usize,
        lower: f64,
        upper: f64,
    },

    #[error("search budget exhausted")]
    BudgetExhausted,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by a size or search budget rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::BudgetExhausted | Error::NonConvergence { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
