use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The iterative eigenvalue reduction did not deflate within its budget.
    #[error("eigenvalue iteration stalled after {iterations} sweeps on a matrix of order {order}")]
    ConvergenceFailure { order: usize, iterations: usize },

    /// A transform required a strictly negative diagonal and found otherwise.
    #[error("diagonal entry ({index},{index}) is {value}; every diagonal entry must be strictly negative")]
    NonNegativeDiagonal { index: usize, value: f64 },

    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,

    /// Exhaustive enumeration was asked for more than it is sized to handle.
    #[error("{subject} {requested} exceeds the enumeration budget (maximum {maximum})")]
    BudgetExceeded {
        subject: &'static str,
        requested: usize,
        maximum: usize,
    },

    #[error("parse error at row {row}, column {column}: {message}")]
    ParseError {
        row: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {message}")]
    DimensionMismatch { message: String },

    #[error("entry ({row},{column}) is not finite")]
    NonFiniteEntry { row: usize, column: usize },
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ConvergenceFailure { .. } => "convergence_failure",
            Error::NonNegativeDiagonal { .. } => "non_negative_diagonal",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::ParseError { .. } => "parse_error",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NonFiniteEntry { .. } => "non_finite_entry",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
