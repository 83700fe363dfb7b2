use thiserror::Error;

/// Everything that can go wrong when building or combining information systems.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not rectangular: row {row} has {found} entries, expected {expected}")]
    NotRectangular { row: usize, expected: usize, found: usize },

    #[error("EmptyAxis: need at least 2 hypotheses and 1 observation, got {hypotheses}x{observations}")]
    EmptyAxis { hypotheses: usize, observations: usize },

    #[error("NegativeEntry row {row} col {col} ({value})")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("NonFiniteEntry row {row} col {col}")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("SumNotOne: entries sum to {sum}")]
    SumNotOne { sum: f64 },

    #[error("ZeroPriorRow: hypothesis {row} has zero prior")]
    ZeroPriorRow { row: usize },

    #[error("label count mismatch on {axis}: {labels} labels for {entries} entries")]
    LabelCount { axis: &'static str, labels: usize, entries: usize },

    #[error("ZeroProbabilityObservation: observation {index} has zero marginal")]
    ZeroProbabilityObservation { index: usize },

    #[error("index {index} out of range for {len} entries")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ObservationSpaceMismatch: systems are defined over different observation labels or hypothesis counts")]
    ObservationSpaceMismatch,

    #[error("UndefinedPosterior: observation {index} has zero marginal in the reference system")]
    UndefinedPosterior { index: usize },

    #[error("NotBinary: operation needs exactly 2 hypotheses, got {hypotheses}")]
    NotBinary { hypotheses: usize },

    #[error("PriorMismatch: priors differ by {max_diff}")]
    PriorMismatch { max_diff: f64 },

    #[error("LabelMismatch: hypothesis labels differ")]
    LabelMismatch,

    #[error("DegeneratePrior: prior must be strictly positive with at least 2 entries")]
    DegeneratePrior,

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid payoff matrix: {0}")]
    InvalidPayoff(String),

    #[error("invalid coupling: {0}")]
    InvalidCoupling(String),

    #[error("linear program failed: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
