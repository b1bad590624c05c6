//! Error types shared across the crate.

use thiserror::Error;

/// Errors from the exact-arithmetic kernel (rings, polynomials, ideals).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("a polynomial ring needs at least one variable")]
    NoVariables,
    #[error("bad variable name `{0}`")]
    BadVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("ideal power with negative exponent")]
    NegativePower,
    #[error("quotient is not finite dimensional")]
    NotCofinite,
    #[error("expected a homogeneous input")]
    NotHomogeneous,
    #[error("division by zero polynomial")]
    ZeroDivisor,
}

/// Errors from filtration construction and validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("the scaling ideal is not m-primary")]
    NotMPrimary,
    #[error("not a good filtration (first failure at index {0})")]
    NotGoodFiltration(usize),
    #[error("q does not contain the filtration ideal")]
    QDoesNotContainI,
    #[error("the base ideal is not contained in the quotient ideal")]
    BaseNotContained,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Errors from graded-piece models and the regularity engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("q does not contain the filtration ideal")]
    QDoesNotContainI,
    #[error("fiber-cone hypothesis fails: M_{{n+1}} is not inside q*M_n at n = {0}")]
    HypothesisFails(usize),
    #[error("degree {0} requested beyond the configured cutoff {1}")]
    CutoffTooSmall(i64, i64),
    #[error("no sufficiently generic element found after {0} attempts")]
    GenericityFailure(u32),
    #[error("computation needs degrees beyond the hard cap {0}; bug or bad genericity")]
    CutoffExceeded(i64),
    #[error("interpolated polynomial disagrees with the computed values")]
    InterpolationInconsistent,
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Errors from resolution-based invariants.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegreeError {
    #[error("Hilbert-Samuel table did not stabilize within {0} steps")]
    StabilizationNotReached(usize),
    #[error("reduction check failed after {0} attempts")]
    ReductionCheckFailed(u32),
    #[error("module is zero")]
    ZeroModule,
    #[error("dimension {0} out of range")]
    BadDimension(i64),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Errors from the pure bound evaluators.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("invalid dimension {0} for this bound")]
    InvalidDimension(i64),
    #[error("coefficient index {0} out of range for dimension {1}")]
    IndexOutOfRange(i64, i64),
    #[error("missing argument `{0}`")]
    MissingArgument(String),
    #[error("unknown bound identifier `{0}`")]
    UnknownBound(String),
}
