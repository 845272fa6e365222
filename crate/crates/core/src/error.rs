use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("empty word")]
    EmptyWord,

    #[error("word is not primitive")]
    NotPrimitive,

    #[error("word is not a Lyndon word")]
    NotLyndon,

    #[error("operation requires a term of positive rank")]
    RankZero,

    #[error("operation requires a rank-1 term, got rank {0}")]
    RankNotOne(usize),

    #[error("exponent {exponent} is below the threshold {n}")]
    ExponentBelowThreshold { exponent: usize, n: usize },

    #[error("expected {expected} exponents, got {got}")]
    ExponentCount { expected: usize, got: usize },

    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),

    #[error("invalid semigroup table: {0}")]
    InvalidTable(String),

    #[error("letter '{0}' has no assigned element")]
    UnassignedLetter(char),

    #[error("{what} bound {value} exceeds the limit {limit}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("rule {rule} ({direction}) does not match at position {position}")]
    PatternMismatch {
        rule: String,
        direction: String,
        position: usize,
    },

    #[error("{0} is not in normal form")]
    NotNormalForm(String),

    #[error("normalization step budget of {0} exhausted")]
    GuardExceeded(usize),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("word is not in the language")]
    NotMember,

    #[error("n = {n} is below mu = {mu}; factorization is not guaranteed unique")]
    BelowMu { n: usize, mu: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed frozen term: {0}")]
    Frozen(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
