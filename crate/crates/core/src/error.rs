use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("extension degree {0} outside 1..=16")]
    InvalidDegree(u32),
    #[error("polynomial {poly:#b} is not primitive: {reason}")]
    NotPrimitive { poly: u32, reason: &'static str },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid code parameters: {0}")]
    InvalidCode(&'static str),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operation requires the narrow-sense evaluation points alpha^0..alpha^(N-1) with N = 2^m - 1")]
    NotNarrowSense,
    #[error("pattern with {errors} errors and {erasures} bit erasures cannot be placed in the word")]
    PatternNotPlaceable { errors: usize, erasures: usize },
    #[error("multiplicity parameter {0} must be even and at least 2")]
    InvalidMultiplicity(u32),
    #[error("interpolation cost {cost} exceeds budget {budget}")]
    BudgetExceeded { cost: u64, budget: u64 },
    #[error("not applicable: {0}")]
    Inapplicable(&'static str),
    #[error("quadrature did not converge (estimated residual {residual:e})")]
    Quadrature { residual: f64 },
}
