use thiserror::Error;

/// Location-tagged problem found while reading one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("{line}:{col}: unknown symbol `{name}`")]
    UnknownSymbol { name: String, line: usize, col: usize },
    #[error("{line}:{col}: `{name}` expects {expected} argument(s), got {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        line: usize,
        col: usize,
    },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("language mismatch: {0}")]
    LanguageMismatch(String),
    #[error("no value bound for variable `{0}`")]
    MissingBinding(String),
    #[error("term does not fit the {variety} shape: {detail}")]
    ShapeMismatch { variety: String, detail: String },
    #[error("resource limit exceeded: {what} would exceed {limit}")]
    ResourceLimit { what: &'static str, limit: u64 },
    #[error("empty seed set and no constants: a subalgebra must be nonempty")]
    EmptySeedNoConstants,
    #[error("operation requires a nonempty point set")]
    EmptySet,
    #[error("parameter must be positive: {0}")]
    NonPositiveParameter(String),
    #[error("variable `{0}` has no finite bound")]
    Unbounded(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("empty equation list")]
    EmptyList,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
}

impl Error {
    pub(crate) fn limit(what: &'static str, limit: u64) -> Self {
        Error::ResourceLimit { what, limit }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
