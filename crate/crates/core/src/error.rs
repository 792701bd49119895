use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar {scalar} cannot be embedded into {field}: {reason}")]
    IncompatibleField {
        scalar: String,
        field: String,
        reason: String,
    },

    #[error("malformed spec at {path}: {reason}")]
    MalformedSpec { path: String, reason: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("space is not of diagonal type: `{0}` is a block")]
    NotDiagonal(String),

    #[error("not an infinite diagonal template: {0}")]
    NotATemplate(String),

    #[error("braid equation fails at basis triple ({0}, {1}, {2})")]
    BraidEquationViolation(String, String, String),

    #[error("budget exceeded: {what} = {size} > {limit}")]
    BudgetExceeded {
        what: String,
        size: u128,
        limit: u128,
    },

    #[error("braiding does not shift the declared grading: {0}")]
    GradingViolation(String),

    #[error("missing PBW data: {0}")]
    MissingData(String),

    #[error("PBW presentation is not convex ({0} violations)")]
    NotConvex(usize),

    #[error("straightening scalar for pair ({0}, {1}) is zero")]
    ZeroLambda(usize, usize),

    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("data file {file}: {reason}")]
    Data { file: String, reason: String },
}

impl Error {
    pub(crate) fn malformed(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::MalformedSpec {
            path: path.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            col,
            message: message.into(),
        }
    }
}
