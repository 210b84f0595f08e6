//! Divisibility verdicts: reduce a series value against a modulus family and
//! report pass/fail with a witness remainder, plus the two classical checks
//! (the central-binomial supercongruence and its q-analogue) and the least
//! nonnegative residue of a rational.

mod report;

pub use report::{CongruenceReport, Engine, ReportParams, Verdict};

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Modulus, ModulusKind, RatFun, Rational};
use crate::qfun::{cyclotomic, q_integer, PochFactor};
use crate::series::{sum_exact, sum_quotient, SeriesSpec, Truncation};

/// Materialize a modulus family at a concrete `n >= 2`.
pub fn build_modulus(kind: ModulusKind, n: i64) -> Result<Modulus> {
    if n < 2 {
        return Err(Error::invalid("moduli need n >= 2"));
    }
    let poly = match kind {
        ModulusKind::Phi => (*cyclotomic(n)).clone(),
        ModulusKind::PhiSquared => cyclotomic(n).pow(2),
        ModulusKind::QInt => q_integer(n),
        ModulusKind::QIntPhi => q_integer(n) * (*cyclotomic(n)).clone(),
        ModulusKind::QIntSquared => q_integer(n).pow(2),
    };
    Modulus::new(poly, kind.label(n))
}

/// Test whether the truncated sum is divisible by the modulus, with the
/// engine chosen by the modulus family (see [`Engine::default_for`]).
pub fn check_divisibility(spec: &SeriesSpec, n: i64, kind: ModulusKind) -> Result<CongruenceReport> {
    check_divisibility_with(spec, n, kind, Engine::default_for(kind))
}

/// As [`check_divisibility`] but with the engine forced.
pub fn check_divisibility_with(
    spec: &SeriesSpec,
    n: i64,
    kind: ModulusKind,
    engine: Engine,
) -> Result<CongruenceReport> {
    if n < 2 {
        return Err(Error::invalid("divisibility checks need n >= 2"));
    }
    let start = Instant::now();
    let modulus = build_modulus(kind, n)?;
    let (verdict, witness, q_power_cleared) = match engine {
        Engine::Quotient => {
            let modulus = Arc::new(modulus.clone());
            match sum_quotient(spec, n, &modulus) {
                Ok(residue) if residue.is_zero() => (Verdict::Pass, None, 0),
                Ok(residue) => (Verdict::Fail, Some(residue.residue().clone()), 0),
                Err(Error::NonUnitDenominator { .. }) | Err(Error::DivisionByZero) => {
                    (Verdict::NotApplicable, None, 0)
                }
                Err(e) => return Err(e),
            }
        }
        Engine::Exact => {
            let value = match sum_exact(spec, n, None) {
                Ok(value) => value,
                Err(Error::DivisionByZero) => {
                    return Ok(finish_report(
                        spec, n, kind, engine, start, Verdict::NotApplicable, None, 0,
                    ))
                }
                Err(e) => return Err(e),
            };
            if !value.den().gcd(modulus.poly()).is_one() {
                (Verdict::NotApplicable, None, 0)
            } else {
                let (cleared, numerator) = value.num().split_q_power();
                let remainder = numerator.rem(modulus.poly())?;
                if remainder.is_zero() {
                    (Verdict::Pass, None, cleared)
                } else {
                    (Verdict::Fail, Some(remainder), cleared)
                }
            }
        }
    };
    Ok(finish_report(spec, n, kind, engine, start, verdict, witness, q_power_cleared))
}

#[allow(clippy::too_many_arguments)]
fn finish_report(
    spec: &SeriesSpec,
    n: i64,
    kind: ModulusKind,
    engine: Engine,
    start: Instant,
    verdict: Verdict,
    witness: Option<LaurentPoly>,
    q_power_cleared: i64,
) -> CongruenceReport {
    CongruenceReport {
        family: String::new(),
        params: ReportParams { d: None, r: None, m: None, n, truncation: spec.truncation.kind() },
        modulus_label: kind.label(n),
        verdict,
        witness,
        q_power_cleared,
        elapsed_ms: start.elapsed().as_millis() as u64,
        engine,
        conjecture: false,
    }
}

/// Certify that a parametric sum vanishes at both `a = q^n` and `a = q^(-n)`.
/// A Laurent polynomial in `a` over the rational-function field that vanishes
/// at those two distinct points is divisible by `(1 - a q^n)(a - q^n)`, which
/// is what the parametric congruences assert.
pub fn parametric_vanishes(spec: &SeriesSpec, n: i64) -> Result<bool> {
    if !spec.has_parameter() {
        return Err(Error::invalid("series does not depend on the parameter a"));
    }
    if n < 1 {
        return Err(Error::invalid("n must be positive"));
    }
    Ok(sum_exact(spec, n, Some(n))?.is_zero() && sum_exact(spec, n, Some(-n))?.is_zero())
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The central-binomial supercongruence at an odd prime `p`:
/// `sum_(k=0)^(p-1) binom(2k, k)^2 / 16^k = (-1)^((p-1)/2)  (mod p^2)`,
/// evaluated with exact modular inverses.
pub fn padic_rv_check(p: i64) -> Result<bool> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::invalid(format!("{} is not an odd prime", p)));
    }
    let p2 = BigInt::from(p) * BigInt::from(p);
    let inv16 = int_inverse(&BigInt::from(16), &p2)
        .expect("16 is a unit modulo an odd prime power");
    let mut binom = BigInt::one(); // binom(2k, k)
    let mut inv16_pow = BigInt::one();
    let mut sum = BigInt::zero();
    for k in 0..p {
        sum = (sum + &binom * &binom % &p2 * &inv16_pow) % &p2;
        // binom(2(k+1), k+1) = binom(2k, k) * 2(2k+1)/(k+1)
        binom = binom * 2 * (2 * k + 1) / (k + 1);
        inv16_pow = inv16_pow * &inv16 % &p2;
    }
    let target = if (p - 1) / 2 % 2 == 0 { BigInt::one() } else { &p2 - 1 };
    Ok(sum.mod_floor(&p2) == target)
}

fn int_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ext = a.extended_gcd(m);
    if ext.gcd.is_one() {
        Some(ext.x.mod_floor(m))
    } else {
        None
    }
}

/// The q-analogue series `sum (q; q^2)_k^2 / (q^2; q^2)_k^2` truncated at
/// `n - 1`.
fn gz_series() -> SeriesSpec {
    SeriesSpec {
        step: 2,
        numerator: vec![PochFactor::plain(1, 2).with_multiplicity(2)],
        denominator: vec![PochFactor::plain(2, 2).with_multiplicity(2)],
        term_q_power: 0,
        truncation: Truncation::Full,
    }
}

/// Difference between the truncated q-analogue sum and its closed congruence
/// value `(-1)^((n-1)/2) q^((1-n^2)/4)`.
fn gz_difference(n: i64) -> Result<RatFun> {
    let value = sum_exact(&gz_series(), n, None)?;
    let sign = if (n - 1) / 2 % 2 == 0 { 1 } else { -1 };
    let target = RatFun::from_poly(LaurentPoly::monomial(
        crate::exact::rat(sign),
        (1 - n * n) / 4,
    ));
    Ok(value - target)
}

fn divides_after_clearing(value: &RatFun, modulus: &LaurentPoly) -> Result<bool> {
    if value.is_zero() {
        return Ok(true);
    }
    if !value.den().gcd(modulus).is_one() {
        return Err(Error::NonUnitDenominator { common: value.den().gcd(modulus) });
    }
    let (_, numerator) = value.num().split_q_power();
    Ok(numerator.rem(modulus)?.is_zero())
}

/// Verify the q-analogue congruence for odd `n >= 3`: the truncated sum is
/// `(-1)^((n-1)/2) q^((1-n^2)/4)` modulo `Phi_n(q)^2`, and modulo `[n]^2` as
/// well when `n` is prime.
pub fn gz_rv_check(n: i64) -> Result<bool> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::invalid(format!("{} is not an odd integer >= 3", n)));
    }
    let diff = gz_difference(n)?;
    let phi_sq = cyclotomic(n).pow(2);
    if !divides_after_clearing(&diff, &phi_sq)? {
        return Ok(false);
    }
    if is_prime(n) {
        let qint_sq = q_integer(n).pow(2);
        if !divides_after_clearing(&diff, &qint_sq)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The least nonnegative residue `<x>_n` of a rational `x` whose denominator
/// is coprime to `n`: the unique `t` in `[0, n-1]` with
/// `numerator = t * denominator (mod n)`.
pub fn residue_mod(x: &Rational, n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::invalid("modulus must be positive"));
    }
    let big_n = BigInt::from(n);
    let den = x.denom().mod_floor(&big_n);
    let ext = den.extended_gcd(&big_n);
    if !ext.gcd.is_one() {
        return Err(Error::NonUnitResidue { modulus: n });
    }
    let num = x.numer().mod_floor(&big_n);
    let t = (num * ext.x.mod_floor(&big_n)).mod_floor(&big_n);
    // t < n fits in i64
    Ok(i64::try_from(&t).expect("residue below modulus"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::series::{catalog, family_main, family_parametric, family_triple, FamilyParams};

    #[test]
    fn theorem_instance_passes_mod_phi_squared() {
        let spec = family_main(3, 1).unwrap();
        let report = check_divisibility(&spec, 5, ModulusKind::PhiSquared).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.engine, Engine::Quotient);
        assert!(report.witness.is_none());
    }

    #[test]
    fn main2_passes_mod_qint_phi() {
        let spec = family_main(2, -1).unwrap();
        let report = check_divisibility(&spec, 3, ModulusKind::QIntPhi).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.engine, Engine::Exact);
    }

    #[test]
    fn negative_control_fails_with_witness() {
        let spec = family_main(3, 1).unwrap();
        let report =
            check_divisibility_with(&spec, 4, ModulusKind::PhiSquared, Engine::Exact).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let witness = report.witness.expect("fail carries a witness");
        assert!(!witness.is_zero());
        // quotient engine agrees
        let report2 =
            check_divisibility_with(&spec, 4, ModulusKind::PhiSquared, Engine::Quotient).unwrap();
        assert_eq!(report2.verdict, Verdict::Fail);
    }

    #[test]
    fn non_coprime_denominator_is_not_applicable() {
        // forcing n = 3 on the d = 3 family makes (q^3; q^3)_k share Phi_3
        let spec = family_main(3, 1).unwrap();
        let report = check_divisibility(&spec, 3, ModulusKind::PhiSquared).unwrap();
        assert_eq!(report.verdict, Verdict::NotApplicable);
        let exact =
            check_divisibility_with(&spec, 3, ModulusKind::PhiSquared, Engine::Exact).unwrap();
        assert_eq!(exact.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn parametric_vanishing_examples() {
        let spec = family_parametric(2, -1).unwrap();
        assert!(parametric_vanishes(&spec, 3).unwrap());
        let spec = family_parametric(3, 1).unwrap();
        assert!(parametric_vanishes(&spec, 5).unwrap());
        let spec = family_triple(6, [1, 1, 4], Some(([5, -5, 0], [4, -4, 0]))).unwrap();
        assert!(parametric_vanishes(&spec, 5).unwrap());
        // a-free specs are rejected
        assert!(parametric_vanishes(&family_main(3, 1).unwrap(), 5).is_err());
    }

    #[test]
    fn padic_rv_small_primes() {
        assert!(padic_rv_check(3).unwrap());
        assert!(padic_rv_check(5).unwrap());
        assert!(padic_rv_check(2).is_err());
        assert!(padic_rv_check(9).is_err());
    }

    #[test]
    fn gz_rv_small_cases() {
        assert!(gz_rv_check(3).unwrap());
        assert!(gz_rv_check(5).unwrap());
        // composite case
        assert!(gz_rv_check(9).unwrap());
        assert!(gz_rv_check(4).is_err());
    }

    #[test]
    fn residue_mod_examples() {
        assert_eq!(residue_mod(&rat(0), 7).unwrap(), 0);
        assert_eq!(residue_mod(&ratio(1, 3), 5).unwrap(), 2);
        assert!(matches!(
            residue_mod(&ratio(1, 3), 6),
            Err(Error::NonUnitResidue { modulus: 6 })
        ));
        assert_eq!(residue_mod(&ratio(-1, 3), 5).unwrap(), 3);
    }

    #[test]
    fn labeled_report_serializes_cleanly() {
        let spec = family_main(3, 1).unwrap();
        let report = check_divisibility(&spec, 5, ModulusKind::PhiSquared)
            .unwrap()
            .labeled("main", &FamilyParams::dr(3, 1), false);
        let line = serde_json::to_string(&report).unwrap();
        assert!(line.contains("\"family\":\"main\""));
        assert!(line.contains("\"modulus_label\":\"phi_pow(5,2)\""));
        assert!(line.contains("\"verdict\":\"pass\""));
        assert!(line.contains("\"d\":3"));
        let entry = catalog().get("main").unwrap();
        assert!(!entry.is_conjecture());
    }
}
