//! Laurent polynomials in the auxiliary parameter `a` whose coefficients are
//! rational functions of `q`. The parametric sums only ever carry a small
//! span of `a`-powers while their q-degrees grow, hence the asymmetric
//! representation.

use std::ops::{Add, Mul};

use super::PochFactor;
use crate::exact::{LaurentPoly, RatFun};

/// `sum_i coeffs[i] * a^(a_offset + i)` with nonzero first and last entries.
#[derive(Debug, Clone, PartialEq)]
pub struct AParamPoly {
    a_offset: i64,
    coeffs: Vec<RatFun>,
}

impl AParamPoly {
    pub fn zero() -> Self {
        AParamPoly { a_offset: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        AParamPoly::constant(RatFun::one())
    }

    pub fn constant(c: RatFun) -> Self {
        if c.is_zero() {
            AParamPoly::zero()
        } else {
            AParamPoly { a_offset: 0, coeffs: vec![c] }
        }
    }

    /// `c * a^e`
    pub fn monomial(c: RatFun, e: i64) -> Self {
        if c.is_zero() {
            AParamPoly::zero()
        } else {
            AParamPoly { a_offset: e, coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(a_offset: i64, coeffs: Vec<RatFun>) -> Self {
        let mut p = AParamPoly { a_offset, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(RatFun::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.a_offset += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.a_offset = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest power of `a` present.
    pub fn a_offset(&self) -> i64 {
        self.a_offset
    }

    /// Coefficient of `a^e`.
    pub fn coeff(&self, e: i64) -> RatFun {
        let idx = e - self.a_offset;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            RatFun::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// True when no power of `a` other than `a^0` appears.
    pub fn is_constant_in_a(&self) -> bool {
        self.is_zero() || (self.a_offset == 0 && self.coeffs.len() == 1)
    }

    /// Substitute `a = q^s`.
    pub fn eval_a_q_power(&self, s: i64) -> RatFun {
        let mut total = RatFun::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.a_offset + i as i64;
            let shifted = c * &RatFun::from_poly(LaurentPoly::q_power(s * e));
            total = total + shifted;
        }
        total
    }
}

impl Add for &AParamPoly {
    type Output = AParamPoly;
    fn add(self, other: &AParamPoly) -> AParamPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.a_offset.min(other.a_offset);
        let hi = (self.a_offset + self.coeffs.len() as i64 - 1)
            .max(other.a_offset + other.coeffs.len() as i64 - 1);
        let mut coeffs = vec![RatFun::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let idx = (self.a_offset + i as i64 - lo) as usize;
            coeffs[idx] = &coeffs[idx] + c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let idx = (other.a_offset + i as i64 - lo) as usize;
            coeffs[idx] = &coeffs[idx] + c;
        }
        AParamPoly::from_coeffs(lo, coeffs)
    }
}

impl Mul for &AParamPoly {
    type Output = AParamPoly;
    fn mul(self, other: &AParamPoly) -> AParamPoly {
        if self.is_zero() || other.is_zero() {
            return AParamPoly::zero();
        }
        let mut coeffs = vec![RatFun::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, ci) in self.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in other.coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(ci * cj);
            }
        }
        AParamPoly::from_coeffs(self.a_offset + other.a_offset, coeffs)
    }
}

impl Add for AParamPoly {
    type Output = AParamPoly;
    fn add(self, other: AParamPoly) -> AParamPoly {
        &self + &other
    }
}

impl Mul for AParamPoly {
    type Output = AParamPoly;
    fn mul(self, other: AParamPoly) -> AParamPoly {
        &self * &other
    }
}

/// The q-shifted factorial `(a^a_exp q^q_exp ; q^step)_k` as a polynomial in
/// `a`: `prod_(j=0)^(k-1) (1 - a^a_exp q^(q_exp + j*step))`, raised to the
/// factor's multiplicity. An `a_exp` of zero degenerates to a single
/// q-coefficient.
pub fn q_pochhammer(factor: &PochFactor, k: i64) -> AParamPoly {
    assert!(k >= 0, "factorial length must be nonnegative");
    let mut base = AParamPoly::one();
    for j in 0..k {
        let e = factor.q_exp + j * factor.step;
        let linear = &AParamPoly::one()
            + &AParamPoly::monomial(-RatFun::from_poly(LaurentPoly::q_power(e)), factor.a_exp);
        base = &base * &linear;
    }
    let mut result = base.clone();
    for _ in 1..factor.multiplicity {
        result = &result * &base;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratfun_poly(offset: i64, coeffs: &[i64]) -> RatFun {
        RatFun::from_poly(LaurentPoly::from_ints(offset, coeffs))
    }

    #[test]
    fn empty_product_is_one() {
        let f = PochFactor::new(3, -2, 5);
        assert_eq!(q_pochhammer(&f, 0), AParamPoly::one());
    }

    #[test]
    fn plain_factor_expands_in_q() {
        // (q; q^2)_2 = (1-q)(1-q^3) = 1 - q - q^3 + q^4
        let f = PochFactor::plain(1, 2);
        let p = q_pochhammer(&f, 2);
        assert!(p.is_constant_in_a());
        assert_eq!(p.coeff(0), ratfun_poly(0, &[1, -1, 0, -1, 1]));
    }

    #[test]
    fn negative_base_exponent() {
        // (q^-1; q^2)_2 = (1 - q^-1)(1 - q)
        let f = PochFactor::plain(-1, 2);
        let p = q_pochhammer(&f, 2);
        let direct = (LaurentPoly::one() - LaurentPoly::q_power(-1))
            * (LaurentPoly::one() - LaurentPoly::q_power(1));
        assert!(p.is_constant_in_a());
        assert_eq!(p.coeff(0), RatFun::from_poly(direct));
    }

    #[test]
    fn multiplicity_raises_the_product() {
        let single = q_pochhammer(&PochFactor::plain(2, 2), 2);
        let squared = q_pochhammer(&PochFactor::plain(2, 2).with_multiplicity(2), 2);
        assert_eq!(squared, &single * &single);
    }

    #[test]
    fn parameter_factor_tracks_a_powers() {
        // (a q; q)_1 = 1 - a q: coefficients 1 at a^0, -q at a^1
        let f = PochFactor::new(1, 1, 1);
        let p = q_pochhammer(&f, 1);
        assert_eq!(p.coeff(0), RatFun::one());
        assert_eq!(p.coeff(1), ratfun_poly(1, &[-1]));
    }

    #[test]
    fn eval_at_q_power_matches_specialized_product() {
        // (a q; q^2)_2 at a = q^3 equals (q^4; q^2)_2
        let f = PochFactor::new(1, 1, 2);
        let sym = q_pochhammer(&f, 2).eval_a_q_power(3);
        let direct = (LaurentPoly::one() - LaurentPoly::q_power(4))
            * (LaurentPoly::one() - LaurentPoly::q_power(6));
        assert_eq!(sym, RatFun::from_poly(direct));
    }

    #[test]
    fn cocycle_property_small() {
        // (a; q)_(m+k) = (a; q)_m * (a q^m; q)_k
        for m in 0..4i64 {
            for k in 0..4i64 {
                let lhs = q_pochhammer(&PochFactor::new(1, 0, 1), m + k);
                let rhs = &q_pochhammer(&PochFactor::new(1, 0, 1), m)
                    * &q_pochhammer(&PochFactor::new(1, m, 1), k);
                assert_eq!(lhs, rhs, "m = {}, k = {}", m, k);
            }
        }
    }
}
