use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic must be 0 or prime, got {0}")]
    InvalidCharacteristic(u64),

    #[error("variable count mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("generator is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("operation requires a proper ideal, got the unit ideal")]
    UnitIdeal,

    #[error("operation requires a nonzero ideal")]
    ZeroIdeal,

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("ideal is not weakly stable: {0}")]
    NotWeaklyStable(String),

    #[error("ideal is not stable: {0}")]
    NotStable(String),

    #[error("ideal is not squarefree: generator {0}")]
    NotSquarefree(String),

    #[error("linear change of coordinates is singular")]
    SingularChange,

    #[error("certification failed at stage {stage}: {message}")]
    Certification { stage: String, message: String, trial_outputs: Vec<String> },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("unknown command `{0}`")]
    UnknownCommand(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
