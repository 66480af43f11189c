use alloc::string::String;

/// Errors raised by the octoslice operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero octonion")]
    DivisionByZero,
    #[error("slice parameter p = {0} outside 0..=6")]
    InvalidSignature(usize),
    #[error("signature mismatch: expected p = {expected}, got p = {found}")]
    SignatureMismatch { expected: usize, found: usize },
    #[error("radius |x_q| is irrational; the point cannot be split exactly")]
    IrrationalRadius,
    #[error("not a stem function: {0}")]
    NotStem(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("polynomial depends on r; CK-extension needs a polynomial in x_p only")]
    DependsOnR,
    #[error("multi-index {0} has a negative entry")]
    NegativeIndex(String),
    #[error("arity mismatch: tree has {leaves} leaves but {factors} factors were given")]
    ArityMismatch { leaves: usize, factors: usize },
    #[error("Fueter variable index {index} out of range for p = {p}")]
    IndexOutOfRange { index: usize, p: usize },
    #[error("degenerate pair: the two slice directions coincide")]
    DegeneratePair,
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("point lies on or outside the integration ball")]
    OutsideDomain,
    #[error("unsupported dimension n = {0}; sphere rules cover 2..=8")]
    UnsupportedDimension(usize),
    #[error("invalid quadrature level {0}")]
    InvalidLevel(usize),
    #[error("nested finite differences support |k| <= 2, got |k| = {0}")]
    DerivativeOrderTooHigh(usize),
    #[error("invalid finite-difference scheme: {0}")]
    InvalidScheme(String),
    #[error("{0} is not a unit imaginary in the slice sphere")]
    NotInSphere(String),
    #[error("orbit of the evaluation point does not meet the integration ball")]
    OrbitMismatch,
    #[error("point does not lie on the integration slice")]
    OffSlice,
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("the Taylor expansion needs a ball centered at the origin")]
    UncenteredBall,
    #[error("series requires |x| < |y|")]
    OutsideConvergence,
}

pub type Result<T> = core::result::Result<T, Error>;
