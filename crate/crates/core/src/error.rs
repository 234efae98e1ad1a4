use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("zero denominator at position {position}")]
    ZeroDenominator { position: usize },

    #[error("symbol `{symbol}` is not allowed here (position {position})")]
    UnexpectedSymbol { symbol: String, position: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("order {requested} exceeds the configured maximum {max}")]
    OrderLimit { requested: usize, max: usize },

    #[error("entry {0} does not lie in the constant field")]
    NotConstant(String),

    /// The Gröbner computation ran out of S-polynomial reductions. This is
    /// "could not decide", never a mathematical answer.
    #[error("resource budget of {budget} S-polynomial reductions exceeded")]
    BudgetExceeded { budget: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    /// Parse and schema errors, as opposed to mathematical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::ZeroDenominator { .. } | Error::UnexpectedSymbol { .. } | Error::Input(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Input(e.to_string())
    }
}
