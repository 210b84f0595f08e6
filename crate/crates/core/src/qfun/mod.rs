//! The named q-objects: cyclotomic polynomials, q-integers, q-shifted
//! factorials with an auxiliary parameter `a`, and q-binomial coefficients.
//!
//! Conventions:
//! - `(x; q)_n = (1 - x)(1 - xq) ... (1 - xq^(n-1))`, empty product = 1
//! - `[n] = 1 + q + ... + q^(n-1)`
//! - `Phi_n(q)` is the n-th cyclotomic polynomial, so `prod_(d|n) Phi_d = q^n - 1`

mod aparam;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

pub use aparam::{q_pochhammer, AParamPoly};

use crate::error::{Error, Result};
use crate::exact::LaurentPoly;

/// One q-shifted-factorial factor `(a^a_exp * q^q_exp ; q^step)_k^multiplicity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PochFactor {
    /// Exponent of the auxiliary parameter `a` (0 when absent).
    pub a_exp: i64,
    /// Exponent `r` of `q` in the base, may be negative.
    pub q_exp: i64,
    /// Step `d >= 1` of the factorial.
    pub step: i64,
    /// Power the whole factorial is raised to, `>= 1`.
    pub multiplicity: u32,
}

impl PochFactor {
    pub fn new(a_exp: i64, q_exp: i64, step: i64) -> Self {
        assert!(step >= 1, "step must be positive");
        PochFactor { a_exp, q_exp, step, multiplicity: 1 }
    }

    /// Plain factor `(q^q_exp; q^step)_k`.
    pub fn plain(q_exp: i64, step: i64) -> Self {
        PochFactor::new(0, q_exp, step)
    }

    pub fn with_multiplicity(mut self, multiplicity: u32) -> Self {
        assert!(multiplicity >= 1, "multiplicity must be positive");
        self.multiplicity = multiplicity;
        self
    }

    pub fn has_parameter(&self) -> bool {
        self.a_exp != 0
    }

    /// Fold a substitution `a = q^s` into the q-exponent.
    pub fn specialize_a(&self, s: i64) -> Self {
        PochFactor {
            a_exp: 0,
            q_exp: self.q_exp + s * self.a_exp,
            step: self.step,
            multiplicity: self.multiplicity,
        }
    }
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<i64, Arc<LaurentPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<i64, Arc<LaurentPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn divisors(n: i64) -> Vec<i64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The n-th cyclotomic polynomial, by exact division
/// `Phi_n = (q^n - 1) / prod_(d|n, d<n) Phi_d`, memoized process-wide.
pub fn cyclotomic(n: i64) -> Arc<LaurentPoly> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(hit) = cyclotomic_cache().read().unwrap().get(&n) {
        return hit.clone();
    }
    // fill bottom-up over the divisor lattice so each step divides exactly
    for d in divisors(n) {
        if cyclotomic_cache().read().unwrap().contains_key(&d) {
            continue;
        }
        let mut quotient = LaurentPoly::q_power(d) - LaurentPoly::one();
        for e in divisors(d) {
            if e == d {
                continue;
            }
            let phi = cyclotomic_cache().read().unwrap().get(&e).unwrap().clone();
            quotient = quotient.exact_div(&phi).expect("cyclotomic product divides q^d - 1");
        }
        cyclotomic_cache().write().unwrap().entry(d).or_insert_with(|| Arc::new(quotient));
    }
    cyclotomic_cache().read().unwrap().get(&n).unwrap().clone()
}

/// The q-integer `[n] = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: i64) -> LaurentPoly {
    assert!(n >= 1, "q-integer index must be positive");
    LaurentPoly::from_coeffs(0, vec![crate::exact::rat(1); n as usize])
}

/// Euler's totient, used to cross-check cyclotomic degrees.
pub fn euler_phi(n: i64) -> i64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `(q; q)_n` as a polynomial.
fn q_factorial(n: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for j in 1..=n {
        acc = acc * LaurentPoly::one_minus_q_power(j);
    }
    acc
}

/// The q-binomial coefficient `[n choose k]`, evaluated by exact division of
/// `(q;q)_n / ((q;q)_k (q;q)_(n-k))` and then substituted `q -> q^base_step`.
/// Out-of-range `k` gives zero.
pub fn q_binomial(n: i64, k: i64, base_step: i64) -> LaurentPoly {
    assert!(n >= 0, "upper index must be nonnegative");
    assert!(base_step >= 1, "base step must be positive");
    if k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let num = q_factorial(n);
    let den = q_factorial(k) * q_factorial(n - k);
    let plain = num.exact_div(&den).expect("q-binomial is a polynomial");
    plain.substitute_q_power(base_step).expect("positive substitution step")
}

/// Checks the terminating alternating-sum identity
/// `sum_(k=0)^n (-1)^k [n choose k] q^(binom(n-k,2) + jk) = 0` for
/// `0 <= j <= n-1`; the sum is evaluated exactly and compared with zero.
pub fn qbino_identity_check(n: i64, j: i64) -> Result<bool> {
    if n < 1 {
        return Err(Error::invalid("n must be positive"));
    }
    if j < 0 || j > n - 1 {
        return Err(Error::invalid(format!("j = {} outside [0, {}]", j, n - 1)));
    }
    let mut sum = LaurentPoly::zero();
    for k in 0..=n {
        let m = n - k;
        let exponent = m * (m - 1) / 2 + j * k;
        let term = q_binomial(n, k, 1).shift(exponent);
        sum = if k % 2 == 0 { sum + term } else { sum - term };
    }
    Ok(sum.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small_values() {
        assert_eq!(*cyclotomic(1), LaurentPoly::from_ints(0, &[-1, 1]));
        assert_eq!(*cyclotomic(2), LaurentPoly::from_ints(0, &[1, 1]));
        assert_eq!(*cyclotomic(6), LaurentPoly::from_ints(0, &[1, -1, 1]));
        // derived by dividing q^12 - 1 by the proper cyclotomic factors
        assert_eq!(*cyclotomic(12), LaurentPoly::from_ints(0, &[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        for n in 1..=60 {
            assert_eq!(cyclotomic(n).degree(), Some(euler_phi(n)), "n = {}", n);
        }
    }

    #[test]
    fn cyclotomic_product_identities() {
        for n in 1..=60 {
            let mut all = LaurentPoly::one();
            let mut proper = LaurentPoly::one();
            for d in divisors(n) {
                all = all * (*cyclotomic(d)).clone();
                if d > 1 {
                    proper = proper * (*cyclotomic(d)).clone();
                }
            }
            assert_eq!(all, LaurentPoly::q_power(n) - LaurentPoly::one(), "n = {}", n);
            assert_eq!(proper, q_integer(n), "n = {}", n);
        }
    }

    #[test]
    fn q_integer_small() {
        assert_eq!(q_integer(1), LaurentPoly::one());
        assert_eq!(q_integer(3), LaurentPoly::from_ints(0, &[1, 1, 1]));
    }

    #[test]
    fn q_binomial_values() {
        assert_eq!(q_binomial(2, 1, 1), LaurentPoly::from_ints(0, &[1, 1]));
        // derived by expanding the definition with exact division
        assert_eq!(q_binomial(4, 2, 1), LaurentPoly::from_ints(0, &[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(3, 3, 1), LaurentPoly::one());
        assert_eq!(q_binomial(3, 5, 1), LaurentPoly::zero());
        assert_eq!(q_binomial(3, -1, 1), LaurentPoly::zero());
        // base step rescales exponents
        assert_eq!(q_binomial(2, 1, 3), LaurentPoly::from_ints(0, &[1, 0, 0, 1]));
    }

    #[test]
    fn q_binomial_pascal_recurrence() {
        for n in 1..=20 {
            for k in 0..=n {
                let lhs = q_binomial(n, k, 1);
                let rhs = q_binomial(n - 1, k - 1, 1)
                    + q_binomial(n - 1, k, 1).shift(k);
                assert_eq!(lhs, rhs, "n = {}, k = {}", n, k);
            }
        }
    }

    #[test]
    fn qbino_identity_examples() {
        assert!(qbino_identity_check(1, 0).unwrap());
        assert!(qbino_identity_check(2, 0).unwrap());
        // derived by direct expansion
        assert!(qbino_identity_check(5, 4).unwrap());
        assert!(qbino_identity_check(3, 3).is_err());
        assert!(qbino_identity_check(3, -1).is_err());
    }

    #[test]
    fn phi_divides_phi_of_power_when_coprime() {
        for n in 1..=20i64 {
            for m in 1..=6i64 {
                if num_integer::Integer::gcd(&m, &n) != 1 {
                    continue;
                }
                let phi = cyclotomic(n);
                let composed = phi.substitute_q_power(m).unwrap();
                assert!(
                    composed.exact_div(&phi).is_ok(),
                    "Phi_{}(q) does not divide Phi_{}(q^{})",
                    n,
                    n,
                    m
                );
            }
        }
    }

    #[test]
    fn totient_small_values() {
        let expected = [(1, 1), (2, 1), (6, 2), (12, 4), (36, 12)];
        for (n, phi) in expected {
            assert_eq!(euler_phi(n), phi);
        }
    }
}
