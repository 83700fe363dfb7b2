use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("ParseError line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("MissingPayoff: the decision score needs --payoff")]
    MissingPayoff,

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] infologic::Error),

    #[error("guarantee violated for: {0}")]
    GuaranteeViolation(String),
}

impl CliError {
    /// 0 success, 2 validation, 3 prior mismatch, 4 arity, 5 guarantee, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use infologic::Error as E;
        match self {
            CliError::Parse { .. } | CliError::MissingPayoff => 2,
            CliError::Io { .. } => 1,
            CliError::GuaranteeViolation(_) => 5,
            CliError::Core(e) => match e {
                E::NotRectangular { .. }
                | E::EmptyAxis { .. }
                | E::NegativeEntry { .. }
                | E::NonFiniteEntry { .. }
                | E::SumNotOne { .. }
                | E::ZeroPriorRow { .. }
                | E::LabelCount { .. }
                | E::InvalidDistribution(_)
                | E::InvalidPayoff(_)
                | E::DimensionMismatch { .. } => 2,
                E::PriorMismatch { .. } => 3,
                E::NotBinary { .. } => 4,
                _ => 1,
            },
        }
    }
}
