use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("modulus polynomial is invalid: {0}")]
    InvalidModulus(String),
    #[error("modulus polynomial is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("element {0} is not a unit")]
    NotAUnit(String),
    #[error("no unit xi with xi + 1 also a unit")]
    NoSuchUnit,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("characteristic {0} is neither zero nor prime")]
    CompositeCharacteristic(u64),
    #[error("matrix is not invertible over the ring")]
    NotInvertible,
    #[error("map does not match the {0} inversion hint")]
    HintMismatch(String),
    #[error("variable support violated: {0}")]
    VariableSupport(String),
    #[error("degree condition violated: {0}")]
    DegreeCondition(String),
    #[error("base field too small: {0}")]
    InsufficientField(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no route found: {0}")]
    NoRoute(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
