use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} appears more than once in lens")]
    DuplicateIndex { index: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("pair lens needs two distinct indices, got {index} twice")]
    EqualIndices { index: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("wire {index} is not in the lens")]
    NotInLens { index: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("gate `{name}` needs a qubit alphabet, got q = {q}")]
    UnsupportedAlphabet { name: String, q: usize },
    #[error("not a permutation of 0..{n}: {detail}")]
    InvalidPermutation { n: usize, detail: String },
    #[error("dense operator on {wires} wires exceeds the {limit}-wire guard")]
    SizeGuardExceeded { wires: usize, limit: usize },
    #[error("state with {q}^{n} amplitudes exceeds the allocation limit of {limit}")]
    StateTooLarge { n: usize, q: usize, limit: usize },
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("{location}: {source}")]
    InFile {
        location: String,
        source: Box<Error>,
    },
}

impl Error {
    /// The underlying error with any file location stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::InFile { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn at(self, location: impl Into<String>) -> Error {
        Error::InFile {
            location: location.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
