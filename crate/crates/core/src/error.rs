use thiserror::Error;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("form degree {degree} exceeds dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension n = {0} is not supported (need n >= 2)")]
    InvalidDimension(usize),
    #[error("symmetry mismatch: {0}")]
    SymmetryMismatch(String),
    #[error("observable is not allowable: {0}")]
    NotAllowable(String),
    #[error("covector alpha must be nonzero")]
    ZeroCovector,
    #[error("vector field is not Hamiltonian: {0}")]
    NotHamiltonian(String),
    #[error("structure equation {equation} violated: {detail}")]
    StructureRejected { equation: usize, detail: String },
    #[error("value is not real: {0}")]
    NotReal(String),
    #[error("result left the observable family: {0}")]
    FamilyViolation(String),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
