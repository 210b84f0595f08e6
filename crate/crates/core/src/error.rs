use crate::exact::LaurentPoly;

/// Errors shared by the polynomial kernel and the verification layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Exact division failed; the remainder is kept as a witness.
    #[error("not divisible: nonzero remainder of degree {}", .remainder.degree().unwrap_or(0))]
    NotDivisible { remainder: LaurentPoly },

    /// Inversion or division by an exact zero.
    #[error("division by zero")]
    DivisionByZero,

    /// A denominator is not invertible modulo the target polynomial.
    /// Carries the (monic) common factor found by the Euclidean pass.
    #[error("denominator not a unit modulo the modulus (common factor of degree {})", .common.degree().unwrap_or(0))]
    NonUnitDenominator { common: LaurentPoly },

    /// The denominator of a rational number shares a factor with the integer modulus.
    #[error("denominator shares factor with modulus {modulus}")]
    NonUnitResidue { modulus: i64 },

    /// Parameter validation failure, with a human-readable diagnostic.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
