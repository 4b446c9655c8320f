use thiserror::Error;

/// Errors raised by the exact arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("gcd undefined")]
    GcdUndefined,
    #[error("division by zero polynomial")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q0")]
    Pole,
    #[error("pole at q=1")]
    PoleAtOne,
    #[error("negative power of X in {0}")]
    NegativeXPower(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed JSON value: {0}")]
    Json(String),
}

/// Errors raised by the series oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle requires rational q in (0,1)")]
    QOutOfRange,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("index n must be at least 1 for this family")]
    IndexTooSmall,
    #[error("this family has no x argument")]
    NonZeroX,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Errors raised by the q-family constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("m must be odd")]
    EvenM,
    #[error("m must be at least 1")]
    ZeroM,
}

/// Errors raised by the identity harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity id: {0}")]
    UnknownId(String),
    #[error("unknown variant {variant} for identity {id}")]
    UnknownVariant { id: String, variant: String },
    #[error("m must be odd for this identity")]
    ParityViolation,
    #[error("n must be odd for this identity")]
    NParityViolation,
    #[error("missing parameter {0}")]
    MissingParam(&'static str),
    #[error("parameter {name}={value} outside declared range")]
    OutOfRange { name: &'static str, value: u32 },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}
