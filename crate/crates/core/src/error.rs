use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("extension degree {0} outside supported range 2..=16")]
    InvalidDegree(u32),
    #[error("polynomial {poly} has degree {found}, expected {expected}")]
    PolyDegreeMismatch {
        poly: String,
        expected: u32,
        found: i64,
    },
    #[error("polynomial {0} is not primitive")]
    NotPrimitive(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("sequence length {0} exceeds the enumeration limit of 24")]
    LengthTooLarge(usize),
    #[error("zero-gap {gap} invalid for extension degree {m_tilde} (need 1 <= gap <= m_tilde)")]
    InvalidGap { gap: u32, m_tilde: u32 },
    #[error("code dimension {k_tilde} with length {n_tilde} exceeds the enumeration guard")]
    TooManyCodewords { k_tilde: usize, n_tilde: usize },
    #[error("{0} columns exceed the full Gram limit of 8192")]
    TooLargeForFullGram(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial degree cap r={r} must be below p={p}")]
    DegreeTooLarge { p: u64, r: u32 },
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("2^{0}-1 is not a Mersenne prime")]
    NotMersenne(u32),
    #[error("RIP order k={k} must satisfy 2 <= k < p={p}")]
    OrderTooLarge { k: u64, p: u64 },
    #[error("matrix with {0} columns exceeds the size guard")]
    SizeGuard(u64),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("DFT backend needs orbit metadata covering every column")]
    BackendUnavailable,
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}
