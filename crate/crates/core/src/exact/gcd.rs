//! Polynomial gcd via the fraction-free subresultant remainder sequence.
//!
//! Rational content is cleared first so the whole sequence runs over integer
//! coefficients; the subresultant divisors keep the intermediate coefficients
//! from blowing up the way naive rational-coefficient Euclid does.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, Rational};

/// Dense integer polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and normalize the leading coefficient positive.
    fn primitive(mut self) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            for x in &mut self.0 {
                *x = &*x / &c;
            }
        }
        self
    }

    fn scale_down(mut self, d: &BigInt) -> Self {
        if !d.is_one() {
            for x in &mut self.0 {
                debug_assert!((&*x % d).is_zero(), "inexact subresultant division");
                *x = &*x / d;
            }
        }
        self
    }

    /// Pseudo-remainder: `lead(b)^(deg a - deg b + 1) * a  mod  b`.
    /// Requires `deg a >= deg b`.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        debug_assert!(self.degree() >= b.degree());
        let db = b.degree();
        let lb = b.lead();
        let monic = lb.is_one();
        let mut rem = self.0.clone();
        // one multiplication by lead(b) per reduction step, padded afterwards
        // so the total factor is exactly lead(b)^(delta+1)
        let mut pending = self.degree() - db + 1;
        while rem.len() >= b.0.len() {
            let top = rem.pop().unwrap();
            let shift = rem.len() + 1 - b.0.len();
            for (i, x) in rem.iter_mut().enumerate() {
                if !monic {
                    *x = &*x * lb;
                }
                if i >= shift {
                    *x -= &top * &b.0[i - shift];
                }
            }
            pending -= 1;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        if !monic && !rem.is_empty() {
            for _ in 0..pending {
                for x in &mut rem {
                    *x = &*x * lb;
                }
            }
        }
        IntPoly(rem)
    }
}

fn to_int_primitive(p: &LaurentPoly) -> IntPoly {
    // multiply by the lcm of denominators, then take the primitive part
    let mut lcm = BigInt::one();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(c.denom());
    }
    let deg = p.degree().map(|d| d as usize + 1).unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg];
    for (e, c) in p.terms() {
        coeffs[e as usize] = c.numer() * (&lcm / c.denom());
    }
    IntPoly(coeffs).trim().primitive()
}

fn to_monic_laurent(p: &IntPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    let lead = p.lead().clone();
    let coeffs: Vec<Rational> =
        p.0.iter().map(|c| Rational::new(c.clone(), lead.clone())).collect();
    LaurentPoly::from_coeffs(0, coeffs)
}

/// Monic gcd of two ordinary polynomials with nonzero constant terms.
pub(super) fn gcd_monic(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.make_monic();
    }
    if b.is_zero() {
        return a.make_monic();
    }
    let (mut u, mut v) = (to_int_primitive(a), to_int_primitive(b));
    if u.degree() < v.degree() {
        std::mem::swap(&mut u, &mut v);
    }
    if v.degree() == 0 {
        return LaurentPoly::one();
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = u.degree() - v.degree();
        let r = u.pseudo_rem(&v);
        if r.is_zero() {
            return to_monic_laurent(&v.primitive());
        }
        if r.degree() == 0 {
            return LaurentPoly::one();
        }
        let divisor = &g * h.pow(delta as u32);
        u = std::mem::replace(&mut v, r.scale_down(&divisor));
        g = u.lead().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta as u32) / h.pow(delta as u32 - 1),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    #[test]
    fn gcd_is_monic_and_divides() {
        // (q+1)^2 (q-2)  and  (q+1)(q^2+1)
        let a = LaurentPoly::from_ints(0, &[1, 1]).pow(2) * LaurentPoly::from_ints(0, &[-2, 1]);
        let b = LaurentPoly::from_ints(0, &[1, 1]) * LaurentPoly::from_ints(0, &[1, 0, 1]);
        let g = a.gcd(&b);
        assert_eq!(g, LaurentPoly::from_ints(0, &[1, 1]));
        assert!(a.exact_div(&g).is_ok());
        assert!(b.exact_div(&g).is_ok());
    }

    #[test]
    fn gcd_with_rational_content() {
        let a = LaurentPoly::from_coeffs(0, vec![ratio(1, 2), ratio(1, 2)]); // (q+1)/2
        let b = LaurentPoly::from_coeffs(0, vec![rat(3), rat(3)]); // 3(q+1)
        assert_eq!(a.gcd(&b), LaurentPoly::from_ints(0, &[1, 1]));
    }

    #[test]
    fn coprime_inputs_give_one() {
        let a = LaurentPoly::from_ints(0, &[1, 1]);
        let b = LaurentPoly::from_ints(0, &[1, 0, 1]);
        assert_eq!(a.gcd(&b), LaurentPoly::one());
    }

    #[test]
    fn gcd_strips_q_power_content() {
        // gcd(q^3 (q-1), q^-1 (q-1)(q+1)) = q - 1 in the Laurent ring
        let a = LaurentPoly::from_ints(0, &[-1, 1]).shift(3);
        let b = (LaurentPoly::from_ints(0, &[-1, 1]) * LaurentPoly::from_ints(0, &[1, 1])).shift(-1);
        assert_eq!(a.gcd(&b), LaurentPoly::from_ints(0, &[-1, 1]));
    }

    #[test]
    fn larger_shared_factor_survives_the_sequence() {
        // gcd((q^4 - 1)(q^3 + 2q + 5), (q^4 - 1)(q^5 - q - 1)) = q^4 - 1
        let shared = LaurentPoly::from_ints(0, &[-1, 0, 0, 0, 1]);
        let a = &shared * &LaurentPoly::from_ints(0, &[5, 2, 0, 1]);
        let b = &shared * &LaurentPoly::from_ints(0, &[-1, -1, 0, 0, 0, 1]);
        assert_eq!(a.gcd(&b), shared);
    }

    #[test]
    fn zero_cases() {
        let p = LaurentPoly::from_ints(0, &[2, 2]);
        assert_eq!(LaurentPoly::zero().gcd(&p), LaurentPoly::from_ints(0, &[1, 1]));
        assert_eq!(p.gcd(&LaurentPoly::zero()), LaurentPoly::from_ints(0, &[1, 1]));
    }
}
