use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Validation failures carry the measured quantity and the tolerance it was
/// checked against so callers can report exactly what went wrong.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A - A^H| = {measured:e} exceeds {tolerance:e}")]
    NotHermitian { measured: f64, tolerance: f64 },

    #[error("trace is not 1: |tr - 1| = {measured:e} exceeds {tolerance:e}")]
    NotUnitTrace { measured: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {measured:e} below {tolerance:e}")]
    NotPsd { measured: f64, tolerance: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("wrong dimension: expected {expected}, got {got}")]
    WrongDimension { expected: String, got: String },

    #[error("state is not bipartite (dims {0:?})")]
    NotBipartite(Vec<usize>),

    #[error("axis is not a unit vector: |n| = {0}")]
    NonUnitAxis(f64),

    #[error("outcome probability {0:e} is below the steering threshold")]
    ZeroProbability(f64),

    #[error("steering denominator |1 + a.m| = {0:e} is singular")]
    SingularDenominator(f64),

    #[error("Alice's marginal is singular (min eigenvalue {0:e})")]
    SingularMarginal(f64),

    #[error("POVM element is invalid: {0}")]
    InvalidPovm(String),

    #[error("POVM elements do not sum to the identity: max deviation {0:e}")]
    IncompletePovm(f64),

    #[error("Kraus operators are not trace preserving: max deviation {0:e}")]
    IncompleteKraus(f64),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("weights are invalid: {0}")]
    WeightsInvalid(String),

    #[error("state is a product state with a pure Alice marginal (|a| = {0})")]
    TrivialProductState(f64),

    #[error("dimension {0} exceeds the supported maximum {1}")]
    DimensionTooLarge(usize, usize),

    #[error("Schmidt coefficients are rank deficient (min {0:e})")]
    RankDeficientSchmidt(f64),

    #[error("geometry violated: {0}")]
    GeometryViolation(String),

    #[error("segment is radial; the state is classical")]
    RadialSegment,

    #[error("optimizer did not converge: {0}")]
    DidNotConverge(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
