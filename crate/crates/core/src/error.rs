use thiserror::Error;

/// Everything that can go wrong in the toolkit.
///
/// Variants are grouped so a front end can map them onto exit codes:
/// parse failures, enumeration-budget overruns and precondition violations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("enumeration needs {required} tuples but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("{0}")]
    Precondition(String),

    #[error("cannot draw {requested} distinct points from a box holding only {available}")]
    InfeasibleSize { requested: usize, available: u128 },

    #[error("random sampling failed to certify a generic rank: {0}")]
    GenericityFailure(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
