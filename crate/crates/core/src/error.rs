use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty history")]
    EmptyHistory,

    #[error("insufficient history: need at least {needed} turns, got {got}")]
    InsufficientHistory { needed: usize, got: usize },

    #[error("invalid payoffs: {0}")]
    InvalidPayoffs(String),

    #[error("degenerate payoffs: normal matrix is singular")]
    DegeneratePayoffs,

    #[error("chi undefined: zero denominator")]
    ChiUndefined,

    #[error("invalid probability {value} for {what}")]
    InvalidProbability { what: String, value: f64 },

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("unknown strategy name `{0}`")]
    UnknownStrategy(String),

    #[error("corpus needs at least 2 strategies, got {0}")]
    CorpusTooSmall(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("missing interaction record for pair ({0}, {1})")]
    MissingPair(String, String),

    #[error("population vector is not on the simplex: {0}")]
    NotOnSimplex(String),

    #[error("nonpositive fitness: {0}")]
    NonPositiveFitness(String),

    #[error("empty input")]
    EmptyInput,

    #[error("rank deficient design matrix")]
    RankDeficient,

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
