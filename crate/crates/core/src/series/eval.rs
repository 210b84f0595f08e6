//! The two summation engines.
//!
//! The exact engine keeps one running numerator over the common denominator
//! that all terms share at the final index (a product of binomials
//! `1 - q^e`), so there is a single normalization at the very end instead of
//! a gcd per addition. The denominator's cyclotomic factorization is known
//! from its exponent list, which makes that normalization a sequence of exact
//! trial divisions rather than a large-degree gcd.
//!
//! The quotient engine walks the same terms through `Q[q]/(m)`, folding the
//! denominator binomials into one residue whose single inversion happens at
//! the end; it is valid whenever every denominator factor is a unit modulo
//! `m`, and reports the common factor otherwise.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Modulus, QuotientElem, RatFun};
use crate::qfun::cyclotomic;

use super::SeriesSpec;

/// A factor after `a`-specialization, flattened over its multiplicity:
/// contributes `1 - q^(base + j*step)` at summation step `j + 1`.
struct FlatFactor {
    base: i64,
    step: i64,
}

fn flatten(factors: &[crate::qfun::PochFactor]) -> Result<Vec<FlatFactor>> {
    let mut flat = Vec::new();
    for f in factors {
        if f.has_parameter() {
            return Err(Error::invalid("series still depends on the parameter a"));
        }
        for _ in 0..f.multiplicity {
            flat.push(FlatFactor { base: f.q_exp, step: f.step });
        }
    }
    Ok(flat)
}

/// Exact evaluation of the truncated sum as a canonical rational function.
/// Parametric specs must come with `a_value = Some(s)` meaning `a = q^s`;
/// every downstream verdict only ever needs `a` at 1 or `q^(+-n)`, so the
/// engine stays univariate.
pub fn sum_exact(spec: &SeriesSpec, n: i64, a_value: Option<i64>) -> Result<RatFun> {
    let spec = match (spec.has_parameter(), a_value) {
        (true, Some(s)) => spec.specialize_a(s),
        (true, None) => {
            return Err(Error::invalid("parametric series needs an a = q^s substitution"))
        }
        (false, _) => spec.clone(),
    };
    let limit = spec.truncation_limit(n)?;
    let num_factors = flatten(&spec.numerator)?;
    let den_factors = flatten(&spec.denominator)?;

    // a vanishing denominator factor anywhere in range makes the sum
    // ill-posed, even past the point where the numerators die off
    for f in &den_factors {
        for j in 0..limit {
            if f.base + j * f.step == 0 {
                return Err(Error::DivisionByZero);
            }
        }
    }

    let mut term_num = LaurentPoly::one(); // product of numerator binomials up to step k
    let mut acc = LaurentPoly::one(); // running numerator over the cumulative denominator
    let mut den_exponents: Vec<i64> = Vec::new();
    for k in 1..=limit {
        let j = k - 1;
        for f in &num_factors {
            term_num = term_num * LaurentPoly::one_minus_q_power(f.base + j * f.step);
            if term_num.is_zero() {
                break;
            }
        }
        if term_num.is_zero() {
            // all later terms vanish too; the untouched denominator factors
            // would cancel in normalization anyway
            break;
        }
        for f in &den_factors {
            let e = f.base + j * f.step;
            acc = acc * LaurentPoly::one_minus_q_power(e);
            den_exponents.push(e);
        }
        acc = acc + term_num.shift(spec.term_q_power * k);
    }
    ratfun_over_binomials(acc, &den_exponents)
}

/// Canonicalize `num / prod (1 - q^e)` using the known cyclotomic
/// factorization `1 - q^e = -(prod_(f|e) Phi_f)` (for `e > 0`; negative `e`
/// additionally contributes the unit `q^e`).
fn ratfun_over_binomials(num: LaurentPoly, den_exponents: &[i64]) -> Result<RatFun> {
    if num.is_zero() {
        return Ok(RatFun::zero());
    }
    let mut negate = false;
    let mut shift = 0i64;
    let mut multiplicity: BTreeMap<i64, u32> = BTreeMap::new();
    for &e in den_exponents {
        if e == 0 {
            return Err(Error::DivisionByZero);
        }
        if e > 0 {
            negate = !negate;
        } else {
            shift += e;
        }
        let m = e.abs();
        let mut d = 1;
        while d * d <= m {
            if m % d == 0 {
                *multiplicity.entry(d).or_insert(0) += 1;
                if d != m / d {
                    *multiplicity.entry(m / d).or_insert(0) += 1;
                }
            }
            d += 1;
        }
    }
    // num / (sign * q^shift * prod Phi) = (sign * q^(-shift) * num) / prod Phi
    let mut num = num.shift(-shift);
    if negate {
        num = -num;
    }
    let mut den = LaurentPoly::one();
    for (&f, &count) in multiplicity.iter().rev() {
        let phi = cyclotomic(f);
        let mut remaining = count;
        while remaining > 0 {
            match num.exact_div(&phi) {
                Ok(quotient) => {
                    num = quotient;
                    remaining -= 1;
                }
                Err(_) => break,
            }
        }
        for _ in 0..remaining {
            den = den * (*phi).clone();
        }
    }
    Ok(RatFun::from_canonical_parts(num, den))
}

/// One term of an `a`-free series as a rational function, for spot checks.
pub fn term_exact(spec: &SeriesSpec, k: i64) -> Result<RatFun> {
    if k < 0 {
        return Err(Error::invalid("term index must be nonnegative"));
    }
    let num_factors = flatten(&spec.numerator)?;
    let den_factors = flatten(&spec.denominator)?;
    let mut num = LaurentPoly::q_power(spec.term_q_power * k);
    for f in &num_factors {
        for j in 0..k {
            num = num * LaurentPoly::one_minus_q_power(f.base + j * f.step);
        }
    }
    let mut den_exponents = Vec::new();
    for f in &den_factors {
        for j in 0..k {
            den_exponents.push(f.base + j * f.step);
        }
    }
    ratfun_over_binomials(num, &den_exponents)
}

/// A factor's running power residue: `q^(base + j*step) mod m`, advanced by
/// one modular multiplication per step instead of reducing a long monomial.
struct RunningPower {
    current: QuotientElem,
    step: QuotientElem,
}

impl RunningPower {
    fn new(factor: &FlatFactor, modulus: &Arc<Modulus>) -> Result<Self> {
        Ok(RunningPower {
            current: QuotientElem::q_power(factor.base, modulus.clone())?,
            step: QuotientElem::q_power(factor.step, modulus.clone())?,
        })
    }

    /// `1 - q^(base + j*step)` at the current `j`, then advance.
    fn take_binomial(&mut self, one: &QuotientElem) -> QuotientElem {
        let binomial = one.sub(&self.current);
        self.current = self.current.mul(&self.step);
        binomial
    }
}

/// Term-by-term evaluation in `Q[q]/(m)`. Equals
/// `quotient_project(sum_exact(..), m)` whenever both paths run.
///
/// The running numerator is accumulated over the product of all denominator
/// binomials, which is inverted once at the end; everything before that stays
/// in integer coefficients (the moduli are monic with integer coefficients),
/// so no rational gcd work happens inside the loop.
pub fn sum_quotient(spec: &SeriesSpec, n: i64, modulus: &Arc<Modulus>) -> Result<QuotientElem> {
    if spec.has_parameter() {
        return Err(Error::invalid("quotient engine needs an a-free series"));
    }
    let limit = spec.truncation_limit(n)?;
    let num_factors = flatten(&spec.numerator)?;
    let den_factors = flatten(&spec.denominator)?;

    let one = QuotientElem::one(modulus.clone());
    let mut num_powers = num_factors
        .iter()
        .map(|f| RunningPower::new(f, modulus))
        .collect::<Result<Vec<_>>>()?;
    let mut den_powers = den_factors
        .iter()
        .map(|f| RunningPower::new(f, modulus))
        .collect::<Result<Vec<_>>>()?;
    let q_term = QuotientElem::q_power(spec.term_q_power, modulus.clone())?;

    let mut q_term_pow = one.clone(); // q^(c k)
    let mut term_num = one.clone(); // N_k, the numerator binomials up to step k
    let mut acc = one.clone(); // running numerator over the cumulative denominator
    let mut den_total = one.clone();
    let mut num_alive = true;
    for _k in 1..=limit {
        let mut step_den = one.clone();
        for power in &mut den_powers {
            step_den = step_den.mul(&power.take_binomial(&one));
        }
        // fold the step's denominator into both sides even after the
        // numerators die off: unit-ness of every factor is part of the deal
        acc = acc.mul(&step_den);
        den_total = den_total.mul(&step_den);
        q_term_pow = q_term_pow.mul(&q_term);
        if num_alive {
            for power in &mut num_powers {
                term_num = term_num.mul(&power.take_binomial(&one));
            }
            if term_num.is_zero() {
                num_alive = false;
            } else {
                acc = acc.add(&term_num.mul(&q_term_pow));
            }
        }
    }
    let den_inv = den_total.inverse()?;
    Ok(acc.mul(&den_inv))
}
