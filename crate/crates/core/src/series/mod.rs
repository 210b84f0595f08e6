//! Symbolic descriptions and exact evaluation of the truncated sums.
//!
//! A [`SeriesSpec`] records a family
//! `sum_(k=0)^T  prod_num (..; q^d)_k / prod_den (..; q^d)_k * q^(c k)`
//! as data: Pochhammer factors with `a`- and `q`-exponents, the term power
//! `c`, and a truncation rule. Two engines evaluate it: an exact
//! rational-function engine and a quotient-ring engine (see [`sum_exact`] and
//! [`sum_quotient`]).

mod catalog;
mod eval;

pub use catalog::{catalog, FamilyCatalog, FamilyEntry, FamilyParams};
pub use eval::{sum_exact, sum_quotient, term_exact};

use crate::error::{Error, Result};
use crate::qfun::PochFactor;

/// Truncation rule for the summation index, as data so every family reuses
/// one summation loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// `k = 0 .. n-1`
    Full,
    /// `k = 0 .. (n+1)/2` (odd `n` only)
    Half,
    /// `k = 0 .. (d n - n - r)/d`, the index past which the specialized
    /// parametric terms vanish.
    ParamBound { r: i64 },
}

impl Truncation {
    pub fn kind(&self) -> &'static str {
        match self {
            Truncation::Full => "full",
            Truncation::Half => "half",
            Truncation::ParamBound { .. } => "param-bound",
        }
    }
}

/// One truncated-sum family.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    /// Common step `d` of the q-shifted factorials.
    pub step: i64,
    pub numerator: Vec<PochFactor>,
    pub denominator: Vec<PochFactor>,
    /// Each term carries `q^(term_q_power * k)`.
    pub term_q_power: i64,
    pub truncation: Truncation,
}

impl SeriesSpec {
    fn new(
        step: i64,
        numerator: Vec<PochFactor>,
        denominator: Vec<PochFactor>,
        term_q_power: i64,
    ) -> Self {
        let spec =
            SeriesSpec { step, numerator, denominator, term_q_power, truncation: Truncation::Full };
        debug_assert!(
            spec.denominator
                .iter()
                .any(|f| f.a_exp == 0 && f.q_exp == spec.step && f.step == spec.step),
            "every family carries a plain (q^d; q^d)_k denominator factor"
        );
        spec
    }

    pub fn with_truncation(mut self, truncation: Truncation) -> Self {
        self.truncation = truncation;
        self
    }

    /// True when any factor depends on the auxiliary parameter `a`.
    pub fn has_parameter(&self) -> bool {
        self.numerator.iter().chain(&self.denominator).any(PochFactor::has_parameter)
    }

    /// Fold the substitution `a = q^s` into every factor.
    pub fn specialize_a(&self, s: i64) -> SeriesSpec {
        SeriesSpec {
            step: self.step,
            numerator: self.numerator.iter().map(|f| f.specialize_a(s)).collect(),
            denominator: self.denominator.iter().map(|f| f.specialize_a(s)).collect(),
            term_q_power: self.term_q_power,
            truncation: self.truncation,
        }
    }

    /// Upper summation index for this truncation rule at a given `n`.
    pub fn truncation_limit(&self, n: i64) -> Result<i64> {
        if n < 1 {
            return Err(Error::invalid("n must be positive"));
        }
        let t = match self.truncation {
            Truncation::Full => n - 1,
            Truncation::Half => {
                if n % 2 == 0 {
                    return Err(Error::invalid("half truncation requires odd n"));
                }
                (n + 1) / 2
            }
            Truncation::ParamBound { r } => {
                let num = self.step * n - n - r;
                if num % self.step != 0 {
                    return Err(Error::invalid(format!(
                        "({}*{} - {} - {})/{} is not an integer",
                        self.step, n, n, r, self.step
                    )));
                }
                num / self.step
            }
        };
        if t < 0 {
            return Err(Error::invalid(format!("truncation limit {} is negative", t)));
        }
        Ok(t)
    }
}

/// The unified one-Pochhammer-to-the-d family
/// `sum (q^r; q^d)_k^d q^(dk) / (q^d; q^d)_k^d`.
pub fn family_main(d: i64, r: i64) -> Result<SeriesSpec> {
    check_main_params(d, r)?;
    Ok(SeriesSpec::new(
        d,
        vec![PochFactor::plain(r, d).with_multiplicity(d as u32)],
        vec![PochFactor::plain(d, d).with_multiplicity(d as u32)],
        d,
    ))
}

/// The `a`-decorated generalization of [`family_main`], built so that `a = 1`
/// recovers it factor by factor. Odd `d` spreads the even powers
/// `a^(+-2), ..., a^(+-(d-1))` over the numerator and the odd powers over the
/// denominator; even `d` does the opposite, with a doubled plain denominator
/// factor.
pub fn family_parametric(d: i64, r: i64) -> Result<SeriesSpec> {
    check_main_params(d, r)?;
    let mut numerator = Vec::new();
    let mut denominator = Vec::new();
    if d % 2 == 1 {
        let mut e = d - 1;
        while e >= 2 {
            numerator.push(PochFactor::new(e, r, d));
            numerator.push(PochFactor::new(-e, r, d));
            e -= 2;
        }
        numerator.push(PochFactor::plain(r, d));
        let mut e = d - 2;
        while e >= 1 {
            denominator.push(PochFactor::new(e, d, d));
            denominator.push(PochFactor::new(-e, d, d));
            e -= 2;
        }
        denominator.push(PochFactor::plain(d, d));
    } else {
        let mut e = d - 1;
        while e >= 1 {
            numerator.push(PochFactor::new(e, r, d));
            numerator.push(PochFactor::new(-e, r, d));
            e -= 2;
        }
        let mut e = d - 2;
        while e >= 2 {
            denominator.push(PochFactor::new(e, d, d));
            denominator.push(PochFactor::new(-e, d, d));
            e -= 2;
        }
        denominator.push(PochFactor::plain(d, d).with_multiplicity(2));
    }
    Ok(SeriesSpec::new(d, numerator, denominator, d))
}

fn check_main_params(d: i64, r: i64) -> Result<()> {
    if d < 2 {
        return Err(Error::invalid(format!("d = {} must be at least 2", d)));
    }
    if r > d - 2 {
        return Err(Error::invalid(format!("r = {} exceeds d - 2 = {}", r, d - 2)));
    }
    if num_integer::Integer::gcd(&r, &d) != 1 {
        return Err(Error::invalid(format!("gcd(r, d) = gcd({}, {}) is not 1", r, d)));
    }
    Ok(())
}

/// Three-Pochhammer families with step 6 or 9:
/// `sum (q^(r1), q^(r2), q^(r3); q^step)_k q^(step*k) / (q^step; q^step)_k^3`,
/// optionally `a`-decorated with one exponent per slot in both numerator and
/// denominator.
pub fn family_triple(
    step: i64,
    exponents: [i64; 3],
    parametric: Option<([i64; 3], [i64; 3])>,
) -> Result<SeriesSpec> {
    if step != 6 && step != 9 {
        return Err(Error::invalid(format!("triple families use step 6 or 9, got {}", step)));
    }
    let (num_a, den_a) = parametric.unwrap_or(([0; 3], [0; 3]));
    let numerator = (0..3).map(|i| PochFactor::new(num_a[i], exponents[i], step)).collect();
    let denominator = (0..3).map(|i| PochFactor::new(den_a[i], step, step)).collect();
    Ok(SeriesSpec::new(step, numerator, denominator, step))
}

/// The two step-`3m` conjecture families. `sign = +1` gives
/// `(q^m, q^r, q^(2m-r); q^(3m))_k`, `sign = -1` gives
/// `(q^(-m), q^r, q^(-2m-r); q^(3m))_k`, both over `(q^(3m); q^(3m))_k^3`.
pub fn family_conj56(m: i64, r: i64, sign: i64) -> Result<SeriesSpec> {
    if m < 1 {
        return Err(Error::invalid(format!("m = {} must be positive", m)));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::invalid("sign must be +1 or -1"));
    }
    let step = 3 * m;
    let exponents = if sign == 1 { [m, r, 2 * m - r] } else { [-m, r, -2 * m - r] };
    let numerator = exponents.iter().map(|&e| PochFactor::plain(e, step)).collect();
    Ok(SeriesSpec::new(
        step,
        numerator,
        vec![PochFactor::plain(step, step).with_multiplicity(3)],
        step,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_main_shape() {
        let spec = family_main(3, 1).unwrap();
        assert_eq!(spec.numerator, vec![PochFactor::plain(1, 3).with_multiplicity(3)]);
        assert_eq!(spec.denominator, vec![PochFactor::plain(3, 3).with_multiplicity(3)]);
        assert_eq!(spec.term_q_power, 3);
        assert!(!spec.has_parameter());

        let spec = family_main(2, -1).unwrap();
        assert_eq!(spec.numerator, vec![PochFactor::plain(-1, 2).with_multiplicity(2)]);
        assert_eq!(spec.denominator, vec![PochFactor::plain(2, 2).with_multiplicity(2)]);
    }

    #[test]
    fn family_main_rejects_bad_params() {
        assert!(family_main(3, 2).is_err()); // r > d - 2
        assert!(family_main(4, 2).is_err()); // gcd(r, d) != 1
        assert!(family_main(1, -1).is_err()); // d < 2
    }

    #[test]
    fn family_parametric_d2_shape() {
        let spec = family_parametric(2, -1).unwrap();
        assert_eq!(spec.numerator, vec![PochFactor::new(1, -1, 2), PochFactor::new(-1, -1, 2)]);
        assert_eq!(spec.denominator, vec![PochFactor::plain(2, 2).with_multiplicity(2)]);
        assert!(spec.has_parameter());
    }

    #[test]
    fn family_parametric_d3_shape() {
        let spec = family_parametric(3, 1).unwrap();
        assert_eq!(
            spec.numerator,
            vec![PochFactor::new(2, 1, 3), PochFactor::new(-2, 1, 3), PochFactor::plain(1, 3)]
        );
        assert_eq!(
            spec.denominator,
            vec![PochFactor::new(1, 3, 3), PochFactor::new(-1, 3, 3), PochFactor::plain(3, 3)]
        );
    }

    #[test]
    fn parametric_at_a_equal_one_reduces_to_main() {
        for (d, r) in [(2, -1), (3, 1), (4, 1), (5, 1), (6, -1)] {
            let main = family_main(d, r).unwrap();
            let param = family_parametric(d, r).unwrap().specialize_a(0);
            // multiset of (q_exp, step) with multiplicity must agree
            let expand = |fs: &[PochFactor]| {
                let mut v: Vec<(i64, i64)> = fs
                    .iter()
                    .flat_map(|f| std::iter::repeat_n((f.q_exp, f.step), f.multiplicity as usize))
                    .collect();
                v.sort();
                v
            };
            assert_eq!(expand(&param.numerator), expand(&main.numerator), "d = {}", d);
            assert_eq!(expand(&param.denominator), expand(&main.denominator), "d = {}", d);
        }
    }

    #[test]
    fn family_triple_shapes() {
        let spec = family_triple(6, [1, 1, 4], None).unwrap();
        assert_eq!(spec.numerator.len(), 3);
        assert_eq!(spec.numerator[2], PochFactor::plain(4, 6));
        assert_eq!(spec.term_q_power, 6);

        let spec = family_triple(9, [-2, -2, -5], None).unwrap();
        assert_eq!(spec.numerator[0], PochFactor::plain(-2, 9));

        assert!(family_triple(5, [1, 1, 1], None).is_err());
    }

    #[test]
    fn family_conj56_shapes() {
        // m=1, r=1, sign +1 reproduces the triple form of family_main(3, 1)
        let spec = family_conj56(1, 1, 1).unwrap();
        let exps: Vec<i64> = spec.numerator.iter().map(|f| f.q_exp).collect();
        assert_eq!(exps, vec![1, 1, 1]);
        assert_eq!(spec.step, 3);

        let spec = family_conj56(1, -1, -1).unwrap();
        let exps: Vec<i64> = spec.numerator.iter().map(|f| f.q_exp).collect();
        assert_eq!(exps, vec![-1, -1, -1]);

        let spec = family_conj56(2, 1, 1).unwrap();
        let exps: Vec<i64> = spec.numerator.iter().map(|f| f.q_exp).collect();
        assert_eq!(exps, vec![2, 1, 3]);
        assert_eq!(spec.step, 6);
    }

    #[test]
    fn truncation_limits() {
        let spec = family_main(3, 1).unwrap();
        assert_eq!(spec.truncation_limit(5).unwrap(), 4);
        assert_eq!(spec.clone().with_truncation(Truncation::Half).truncation_limit(5).unwrap(), 3);
        assert!(spec.clone().with_truncation(Truncation::Half).truncation_limit(4).is_err());
        let bounded = spec.with_truncation(Truncation::ParamBound { r: 1 });
        assert_eq!(bounded.truncation_limit(5).unwrap(), 3); // (15 - 5 - 1)/3
        assert!(bounded.truncation_limit(4).is_err()); // not an integer
    }
}
