use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a pole at {0}")]
    PoleAtPoint(String),
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("bilinear form is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("matrix is not an automorphism of {0}")]
    NotAutomorphism(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("basis index e{index} out of range for dimension {dim} (line {line})")]
    IndexOutOfRange {
        index: usize,
        dim: usize,
        line: usize,
    },
    #[error("product e{0}*e{1} defined twice (line {2})")]
    DuplicateProduct(usize, usize, usize),
    #[error("basis row E{0} defined twice (line {1})")]
    DuplicateRow(usize, usize),
    #[error("parameter `{0}` is not bound")]
    UnboundParameter(String),
    #[error("template has a pole at {0}")]
    EvaluationPole(String),
    #[error("parametrized basis is singular")]
    SingularBasisMatrix,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
