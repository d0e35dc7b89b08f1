use thiserror::Error;

/// Errors raised by the exact layers of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("zero denominator at position {position}")]
    ZeroDenominator { position: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("column {column} is identically zero (lattice lies in a coordinate hyperplane)")]
    HyperplaneViolation { column: usize },

    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },

    #[error("scalar must be non-negative")]
    NegativeScalar,

    #[error("point is not a member of the tropical lattice")]
    NotMember,

    #[error("entropy value for subset {subset} is infinite")]
    InfiniteEntropy { subset: String },

    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("column subset has rank deficiency at column {column}")]
    RankDeficient { column: usize },

    #[error("retry budget exhausted after {attempts} attempts")]
    RetryBudgetExhausted { attempts: usize },

    #[error("denominator divisible by p = {prime}")]
    DenominatorDivisibleByPrime { prime: u64 },

    #[error("exponent {exponent} is not a multiple of 1/{denominator}")]
    ExponentOffGrid { exponent: String, denominator: u64 },

    #[error("truncation {truncation} too small: need at least {required}")]
    TruncationTooSmall { truncation: String, required: String },

    #[error("entropy vector is supermodular; no negative cube exists")]
    Supermodular,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown example id {0}")]
    UnknownExample(String),

    #[error("empty complex")]
    EmptyComplex,

    #[error("invalid document: {0}")]
    Json(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Stable machine-readable code, used in CLI error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::ZeroDenominator { .. } => "zero_denominator",
            Error::Singular => "singular_matrix",
            Error::InvalidMatrix(_) => "invalid_matrix",
            Error::HyperplaneViolation { .. } => "hyperplane_violation",
            Error::NonFinite { .. } => "non_finite_coordinate",
            Error::NegativeScalar => "negative_scalar",
            Error::NotMember => "not_member",
            Error::InfiniteEntropy { .. } => "infinite_entropy",
            Error::GuardExceeded(_) => "guard_exceeded",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::RetryBudgetExhausted { .. } => "retry_budget_exhausted",
            Error::DenominatorDivisibleByPrime { .. } => "denominator_divisible_by_prime",
            Error::ExponentOffGrid { .. } => "exponent_off_grid",
            Error::TruncationTooSmall { .. } => "truncation_too_small",
            Error::Supermodular => "supermodular",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::UnknownExample(_) => "unknown_example",
            Error::EmptyComplex => "empty_complex",
            Error::Json(_) => "invalid_document",
            Error::Io(_) => "io_error",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
