use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Dyck path: {0}")]
    InvalidDyckPath(String),
    #[error("invalid restriction sequence {r:?}: {reason}")]
    InvalidRestriction { r: Vec<usize>, reason: &'static str },
    #[error("weight vector {w:?} is not compatible with height sequence {h:?}")]
    IncompatibleWeights { w: Vec<usize>, h: Vec<usize> },
    #[error("color vector has length {got}, expected {expected}")]
    ColorLength { got: usize, expected: usize },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("matchings have different types: {0} vs {1}")]
    TypeMismatch(String, String),
    #[error("base matching must have only red edges")]
    BaseNotRed,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("signed permutation {0} is not allowed here: {1}")]
    SignedNotAllowed(String, &'static str),
    #[error("permutation {perm} does not satisfy restriction {r:?}")]
    NotInClass { perm: String, r: Vec<usize> },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("formula {0} needs {1}")]
    MissingParameter(String, &'static str),
    #[error("parse error: {0}")]
    Parse(String),
}
