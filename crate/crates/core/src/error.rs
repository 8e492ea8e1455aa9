//! Error type shared across the library.
//!
//! `Internal` is reserved for violated invariants (exact divisions with a
//! remainder, cross-check mismatches): callers should treat it as a bug in
//! this library, not as bad input.

use num_bigint::BigUint;
use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("dimension must be at least {min} (got {got})")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("dimension {got} exceeds the supported maximum {max}")]
    DimensionTooLarge { max: usize, got: usize },
    #[error("a_{index} is not a free coefficient for dimension {g} (free: a_{g} .. a_{high})", high = 2 * g - 1)]
    BadFixIndex { index: usize, g: usize },
    #[error("expected {expected} free coefficients for dimension {g}, got {got}")]
    WrongCoeffCount { g: usize, expected: usize, got: usize },
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("cannot factor zero")]
    FactorZero,
    #[error("modulus must be at least 2 (got {0})")]
    ModulusTooSmall(BigUint),
    #[error("polynomial vanishes modulo {0}")]
    ZeroModulo(u64),
    #[error("leading coefficient is not invertible modulo {0}")]
    BadLeadingCoeff(u64),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("interval endpoints are out of order")]
    EmptyInterval,
    #[error("not a Weil polynomial")]
    NotWeil,
    #[error("polynomial is reducible over the rationals")]
    Reducible,
    #[error("q = {0} is a perfect square; factor structure over Z is not decided")]
    SquareFieldSize(u64),
    #[error("n = {n} is not coprime to q = {q}")]
    ModulusNotCoprime { n: BigUint, q: u64 },
    #[error("matrix is not invertible modulo {0}")]
    NotInvertible(BigUint),
    #[error("ell = {0} equals the residue characteristic; applicability is undefined")]
    EllEqualsP(u64),
    #[error("coefficient {0} does not fit the survey row encoding")]
    CoeffTooLarge(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Build an `Internal` error from anything displayable.
    pub fn internal(msg: impl std::fmt::Display) -> Self {
        Error::Internal(msg.to_string())
    }
}
