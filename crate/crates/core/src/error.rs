use thiserror::Error;

/// Errors raised by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("unsupported surface: {0}")]
    UnsupportedSurface(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("trivial element has no root")]
    TrivialElement,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown double point {0}")]
    UnknownDoublePoint(u32),
    #[error("inconsistent site: {0}")]
    InconsistentSite(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("maslov integer {mu} violates the parity constraint")]
    ParityViolation { mu: i64 },
    #[error("entry {0} is not in the odd half of the projective bundle group")]
    WrongParity(usize),
    #[error("key space mismatch: {0}")]
    KeySpaceMismatch(String),
    #[error("unsupported loop: {0}")]
    UnsupportedLoop(String),
    #[error("invalid front: {0}")]
    InvalidFront(String),
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("semantic error: {0}")]
    Semantic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
