use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("target ring is missing variable `{0}`")]
    MissingTargetVariable(String),

    #[error("leading term of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("exponent vector has length {got}, ring has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty order matrix")]
    EmptyMatrix,

    #[error("not a total order: matrix rank {rank} < {nvars}")]
    NotTotalOrder { rank: usize, nvars: usize },

    #[error("variable sets do not partition the ring variables: {0}")]
    NotPartition(String),

    #[error("operation requires a global order")]
    NonGlobalOrder,

    #[error("non-control order: {0}")]
    NonControlOrder(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("factor product does not match the ideal: {0}")]
    ProductMismatch(String),

    #[error("decomposition does not intersect to the ideal")]
    DecompositionMismatch,

    #[error("empty point set")]
    EmptyPointSet,

    #[error("duplicate point in point set")]
    DuplicatePoint,

    #[error("radical unavailable: {0}")]
    RadicalUnavailable(String),

    #[error("missing witness generators for {0}")]
    MissingWitnesses(String),

    #[error("not a monomial ideal: {0}")]
    NotMonomial(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("not divisible: {0}")]
    NotDivisible(String),
}

impl Error {
    /// True for refusals grounded in the mathematics (as opposed to malformed input).
    pub fn is_domain_refusal(&self) -> bool {
        !matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
