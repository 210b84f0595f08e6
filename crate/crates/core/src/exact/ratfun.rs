//! Canonical-form rational functions in `q`.
//!
//! Invariants: the denominator is an ordinary polynomial with nonzero constant
//! term and leading coefficient 1 (every power of `q` lives in the numerator's
//! offset), and the numerator's ordinary part is coprime to the denominator.
//! Two equal rational functions therefore have identical field values, so
//! equality and zero tests are plain structural comparisons.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{LaurentPoly, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RatFun {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFun {
    /// Canonicalize `num/den`; errors when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let (num_shift, mut num) = num.split_q_power();
        let (den_shift, mut den) = den.split_q_power();
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.exact_div(&g).expect("gcd divides numerator");
            den = den.exact_div(&g).expect("gcd divides denominator");
        }
        let lead = den.leading_coeff().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFun { num: num.shift(num_shift - den_shift), den })
    }

    /// Internal constructor for parts already in canonical form. Coprimality
    /// of the parts is the caller's responsibility (checking it here would
    /// cost a large gcd on every series evaluation).
    pub(crate) fn from_canonical_parts(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(den.is_monic() && den.is_ordinary());
        debug_assert!(!den.constant_coeff().is_zero() || den.is_one());
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RatFun { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFun { num: p, den: LaurentPoly::one() }
    }

    pub fn from_rational(r: Rational) -> Self {
        RatFun::from_poly(LaurentPoly::constant(r))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // swapping canonical parts needs no gcd, only renormalization
        let (shift, num_ord) = self.num.split_q_power();
        let lead = num_ord.leading_coeff().unwrap().clone();
        let inv = lead.recip();
        let new_num = self.den.scale(&inv).shift(-shift);
        let new_den = num_ord.scale(&inv);
        Ok(RatFun { num: new_num, den: new_den })
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, other: &RatFun) -> RatFun {
        let num = &self.num * &other.den + &other.num * &self.den;
        let den = &self.den * &other.den;
        RatFun::new(num, den).expect("denominators are nonzero")
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, other: &RatFun) -> RatFun {
        self + &(-other)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, other: &RatFun) -> RatFun {
        RatFun::new(&self.num * &other.num, &self.den * &other.den)
            .expect("denominators are nonzero")
    }
}

macro_rules! forward_owned_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, other: RatFun) -> RatFun {
                (&self).$method(&other)
            }
        }
        impl $imp<&RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, other: &RatFun) -> RatFun {
                (&self).$method(other)
            }
        }
        impl $imp<RatFun> for &RatFun {
            type Output = RatFun;
            fn $method(self, other: RatFun) -> RatFun {
                self.$method(&other)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(offset: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(offset, coeffs)
    }

    #[test]
    fn telescoping_sum_is_one() {
        let one_minus_q = poly(0, &[1, -1]);
        let a = RatFun::new(LaurentPoly::one(), one_minus_q.clone()).unwrap();
        let b = RatFun::new(poly(1, &[-1]), one_minus_q).unwrap();
        assert!((a + b).is_one());
    }

    #[test]
    fn invert_moves_q_power_to_numerator() {
        // (q^-2 (1 + q))^-1 = q^2 / (1 + q)
        let x = RatFun::new(poly(-2, &[1, 1]), LaurentPoly::one()).unwrap();
        let inv = x.invert().unwrap();
        assert_eq!(inv.num(), &poly(2, &[1]));
        assert_eq!(inv.den(), &poly(0, &[1, 1]));
        assert!(RatFun::zero().invert().is_err());
    }

    #[test]
    fn geometric_factor_normalizes() {
        // (1 - q^3)/(1 - q) -> 1 + q + q^2
        let x = RatFun::new(poly(0, &[1, 0, 0, -1]), poly(0, &[1, -1])).unwrap();
        assert_eq!(x.num(), &poly(0, &[1, 1, 1]));
        assert!(x.is_polynomial());
    }

    #[test]
    fn denominator_is_monic_with_nonzero_constant() {
        // 1 / (2q^3 - 2q) = q^-1 / (2q^2 - 2): canonical den q^2 - 1, num q^-1/2
        let x = RatFun::new(LaurentPoly::one(), poly(1, &[-2, 0, 2])).unwrap();
        assert_eq!(x.den(), &poly(0, &[-1, 0, 1]));
        assert_eq!(x.num(), &LaurentPoly::from_coeffs(-1, vec![crate::exact::ratio(1, 2)]));
    }

    #[test]
    fn mul_cancels_common_factors() {
        let a = RatFun::new(poly(0, &[1, 1]), poly(0, &[1, -1])).unwrap(); // (1+q)/(1-q)
        let b = RatFun::new(poly(0, &[1, -1]), poly(0, &[1, 1])).unwrap(); // (1-q)/(1+q)
        assert!((a * b).is_one());
    }

    #[test]
    fn zero_is_canonical() {
        let z = RatFun::new(LaurentPoly::zero(), poly(0, &[5, 1])).unwrap();
        assert_eq!(z, RatFun::zero());
        assert_eq!(z.den(), &LaurentPoly::one());
    }
}
