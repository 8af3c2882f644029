use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Raised by a counted evaluation once the budget is spent. Algorithms
    /// treat it as the end of the run.
    #[error("evaluation budget of {0} evaluations exhausted")]
    BudgetExhausted(u64),

    #[error("{what} = {value} is outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot form {k} clusters from {n} points")]
    ClusterCount { k: usize, n: usize },

    #[error("cluster memory is empty")]
    EmptyMemory,

    #[error("unknown benchmark function `{0}`")]
    UnknownFunction(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("suite dimension {0} not supported (expected one of 2, 10, 30, 50, 100)")]
    UnsupportedDimension(usize),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("invalid result table: {0}")]
    Table(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}
