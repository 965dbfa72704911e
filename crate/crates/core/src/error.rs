//! Error type shared across the toolkit.

use crate::poly::BinaryPolynomial;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial has a zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial {0} is not primitive")]
    NotPrimitive(BinaryPolynomial),
    #[error("extension degree {0} outside the supported range 2..=24")]
    DegreeOutOfRange(usize),
    #[error("the zero element has no inverse or logarithm")]
    ZeroElement,
    #[error("field context mismatch")]
    ContextMismatch,
    #[error("exponent {k} is not invertible mod {modulus}")]
    NonInvertibleExponent { k: u64, modulus: u64 },
    #[error("arity mismatch: expected {expected}, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("sequence length {actual} does not match the full period {expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("initial state must be nonzero")]
    ZeroInitialState,
    #[error("unfactorable remainder {0}: roots lie outside the field's period")]
    UnfactorableRemainder(BinaryPolynomial),
    #[error("coefficient for coset {leader} lies outside its subfield")]
    SubfieldViolation { leader: u64 },
    #[error("no degree-{degree} monomial subset matches the target spectrum")]
    InfeasibleLevel { degree: usize },
    #[error("spectrum has empty support")]
    EmptySpectrum,
}
