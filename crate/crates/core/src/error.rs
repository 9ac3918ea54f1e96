use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseAt { line: usize, column: usize, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("characteristic {characteristic} unsupported for dimension {dim}: need 0 or p > {bound}")]
    UnsupportedCharacteristic { characteristic: u64, dim: usize, bound: usize },
    #[error("ideal is not two-sided")]
    NotTwoSided,
    #[error("quiver has an oriented cycle through vertex {0}")]
    NotAcyclic(String),
    #[error("injective decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("closure radius {have} is below the required {need}")]
    InsufficientClosureRadius { have: usize, need: usize },
    #[error("truncation degree {have} is below the required {need}")]
    InsufficientTruncation { have: usize, need: usize },
    #[error("sequence has {have} terms, need at least {need}")]
    InsufficientData { have: usize, need: usize },
    #[error("incompatible bialgebra structure: {0}")]
    IncompatibleStructure(String),
    #[error("coalgebra is not left coreflexive: {0}")]
    NotLeftCoreflexive(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("unresolved reference {0:?}")]
    UnresolvedReference(String),
    #[error("computation cancelled")]
    Cancelled,
}
