use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Axiom violations found by the checkers are *data* (see
/// [`AxiomReport`](crate::AxiomReport)); the [`Error::Axiom`] variant is only
/// used when an operation cannot proceed because a prerequisite identity fails.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Mismatched variable lists, foreign basis elements, wrong lengths.
    #[error("structural error: {0}")]
    Structural(String),
    /// Malformed textual input. `line` is 1-based when known.
    #[error("parse error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse {
        line: Option<usize>,
        message: String,
    },
    /// Input is well formed but outside the domain of the operation.
    #[error("input error: {0}")]
    Input(String),
    /// A prerequisite identity does not hold.
    #[error("axiom error: {0}")]
    Axiom(String),
    /// The input is valid but the requested computation is not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A configured budget (arity, degree, blow-up count, truncation order) was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// An internal consistency guard fired; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: Option<usize>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
