//! Exact arithmetic substrate: big rationals, Laurent polynomials in `q`,
//! canonical rational functions, and quotient-ring residues.

mod gcd;
mod laurent;
mod quotient;
mod ratfun;

pub use laurent::LaurentPoly;
pub use quotient::{quotient_project, Modulus, ModulusKind, ModulusLabel, QuotientElem};
pub use ratfun::RatFun;

/// Coefficient field: arbitrary-precision rationals, always reduced with a
/// positive denominator (zero is 0/1).
pub type Rational = num_rational::BigRational;

pub type BigInt = num_bigint::BigInt;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Fraction `n/d` as a rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
