//! Dense Laurent polynomials in one variable `q` over the rationals.
//!
//! A value is `q^offset * (c_0 + c_1 q + ... + c_m q^m)` with `c_0 != 0` and
//! `c_m != 0`; the zero polynomial is the empty coefficient list with offset 0.
//! Ordinary polynomials are exactly the values with `offset >= 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    offset: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { offset: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { offset: 0, coeffs: vec![c] }
        }
    }

    /// The monomial `c * q^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { offset: e, coeffs: vec![c] }
        }
    }

    /// `q^e` (negative exponents allowed).
    pub fn q_power(e: i64) -> Self {
        LaurentPoly::monomial(Rational::one(), e)
    }

    /// `1 - q^e`; the zero polynomial when `e == 0`.
    pub fn one_minus_q_power(e: i64) -> Self {
        if e == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly::one() - LaurentPoly::q_power(e)
    }

    /// Build from a dense coefficient run starting at `offset`; trims zeros.
    pub fn from_coeffs(offset: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = LaurentPoly { offset, coeffs };
        p.trim();
        p
    }

    /// Integer convenience constructor for tests and small polynomials.
    pub fn from_ints(offset: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::from_coeffs(offset, coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.offset += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.offset == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent present (the `offset`); `None` for zero.
    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    /// Highest exponent present; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    /// True for ordinary polynomials (no negative exponents). Zero counts.
    pub fn is_ordinary(&self) -> bool {
        self.is_zero() || self.offset >= 0
    }

    pub fn coeff(&self, e: i64) -> Rational {
        let idx = e - self.offset;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn constant_coeff(&self) -> Rational {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// Iterate `(exponent, coefficient)` for the nonzero terms, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    /// Split into `q^shift * ordinary` where the ordinary part has a nonzero
    /// constant term. Zero splits as `(0, zero)`.
    pub fn split_q_power(&self) -> (i64, LaurentPoly) {
        if self.is_zero() {
            (0, LaurentPoly::zero())
        } else {
            (self.offset, LaurentPoly { offset: 0, coeffs: self.coeffs.clone() })
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { offset: self.offset, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `q^e` in place.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { offset: self.offset + e, coeffs: self.coeffs.clone() }
    }

    /// Divide by the leading coefficient.
    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            None => LaurentPoly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `q -> q^m` for nonzero integer `m` (negative `m` flips the
    /// exponent range).
    pub fn substitute_q_power(&self, m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("substitution exponent must be nonzero"));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let stride = m.unsigned_abs() as usize;
        let len = (self.coeffs.len() - 1) * stride + 1;
        let mut coeffs = vec![Rational::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pos = if m > 0 { i * stride } else { (self.coeffs.len() - 1 - i) * stride };
            coeffs[pos] = c.clone();
        }
        let offset = if m > 0 {
            self.offset * m
        } else {
            // highest old exponent becomes the lowest new one
            (self.offset + self.coeffs.len() as i64 - 1) * m
        };
        Ok(LaurentPoly::from_coeffs(offset, coeffs))
    }

    /// Evaluate at a rational point; `x = 0` requires an ordinary polynomial.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if x.is_zero() {
            if self.offset < 0 {
                return Err(Error::DivisionByZero);
            }
            return Ok(if self.offset == 0 { self.coeffs[0].clone() } else { Rational::zero() });
        }
        // Horner on the ordinary part, then the offset power.
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        let mut power = Rational::one();
        let xi = if self.offset >= 0 { x.clone() } else { x.recip() };
        for _ in 0..self.offset.unsigned_abs() {
            power *= &xi;
        }
        Ok(acc * power)
    }

    /// Quotient and remainder of ordinary polynomials (`self = quo*b + rem`,
    /// `deg rem < deg b`).
    pub fn div_rem(&self, b: &Self) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.is_ordinary() || !b.is_ordinary() {
            return Err(Error::invalid("div_rem requires ordinary polynomials"));
        }
        if self.is_zero() {
            return Ok((LaurentPoly::zero(), LaurentPoly::zero()));
        }
        let db = b.degree().unwrap();
        let da = self.degree().unwrap();
        if da < db {
            return Ok((LaurentPoly::zero(), self.clone()));
        }
        let lb_inv = b.leading_coeff().unwrap().recip();
        // dense working copy over exponents 0..=da
        let mut rem = vec![Rational::zero(); (da + 1) as usize];
        for (e, c) in self.terms() {
            rem[e as usize] = c.clone();
        }
        let quo_len = (da - db + 1) as usize;
        let mut quo = vec![Rational::zero(); quo_len];
        for top in (db..=da).rev() {
            if rem[top as usize].is_zero() {
                continue;
            }
            let factor = &rem[top as usize] * &lb_inv;
            let shift = top - db;
            for (e, c) in b.terms() {
                let idx = (e + shift) as usize;
                let delta = c * &factor;
                rem[idx] -= delta;
            }
            rem[top as usize] = Rational::zero(); // cancel exactly, no residue from rounding
            quo[shift as usize] = factor;
        }
        Ok((LaurentPoly::from_coeffs(0, quo), LaurentPoly::from_coeffs(0, rem)))
    }

    /// Remainder of ordinary polynomial division.
    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.div_rem(b)?.1)
    }

    /// Exact Laurent division; fails with the remainder as witness when `b`
    /// does not divide `self`. `q`-powers are units, so divisibility is decided
    /// on the ordinary parts.
    pub fn exact_div(&self, b: &Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let (sa, pa) = self.split_q_power();
        let (sb, pb) = b.split_q_power();
        let (quo, rem) = pa.div_rem(&pb)?;
        if !rem.is_zero() {
            return Err(Error::NotDivisible { remainder: rem.shift(sa) });
        }
        Ok(quo.shift(sa - sb))
    }

    /// Monic greatest common divisor in the Laurent ring: `q`-powers are
    /// units, so the result is an ordinary polynomial with nonzero constant
    /// term. Uses the fraction-free subresultant remainder sequence over the
    /// integers after clearing rational content.
    pub fn gcd(&self, b: &Self) -> Self {
        let (_, pa) = self.split_q_power();
        let (_, pb) = b.split_q_power();
        super::gcd::gcd_monic(&pa, &pb)
    }
}

// ---------------------------------------------------------------------------
// operator impls (reference forms carry the real logic)
// ---------------------------------------------------------------------------

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { offset: self.offset, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = (self.degree().unwrap()).max(other.degree().unwrap());
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms() {
            coeffs[(e - lo) as usize] += c;
        }
        for (e, c) in other.terms() {
            coeffs[(e - lo) as usize] += c;
        }
        LaurentPoly::from_coeffs(lo, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, other: &LaurentPoly) -> LaurentPoly {
        self + &(-other)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let (short, long) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = vec![Rational::zero(); short.coeffs.len() + long.coeffs.len() - 1];
        for (i, ci) in short.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in long.coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                coeffs[i + j] += ci * cj;
            }
        }
        LaurentPoly::from_coeffs(self.offset + other.offset, coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, other: LaurentPoly) -> LaurentPoly {
                (&self).$method(&other)
            }
        }
        impl $imp<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, other: &LaurentPoly) -> LaurentPoly {
                (&self).$method(other)
            }
        }
        impl $imp<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, other: LaurentPoly) -> LaurentPoly {
                self.$method(&other)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one();
            if !unit || e == 0 {
                write!(f, "{}", abs)?;
            }
            if e != 0 {
                if !unit {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", e)?;
                }
            }
        }
        Ok(())
    }
}
