//! Residue arithmetic in `Q[q]/(m(q))` for a fixed ordinary modulus `m`.
//!
//! This is the fast path for divisibility checks against `Phi_n(q)^e`: every
//! residue stays below `deg m`, so term-by-term series accumulation never sees
//! the large numerators the exact engine carries around.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::{LaurentPoly, RatFun};
use crate::error::{Error, Result};

/// The modulus families a divisibility check can target, before the witness
/// `n` is filled in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModulusKind {
    /// `Phi_n(q)`
    Phi,
    /// `Phi_n(q)^2`
    PhiSquared,
    /// `[n]`
    QInt,
    /// `[n] * Phi_n(q)`
    QIntPhi,
    /// `[n]^2`
    QIntSquared,
}

impl ModulusKind {
    pub fn label(self, n: i64) -> ModulusLabel {
        match self {
            ModulusKind::Phi => ModulusLabel::PhiPow { n, e: 1 },
            ModulusKind::PhiSquared => ModulusLabel::PhiPow { n, e: 2 },
            ModulusKind::QInt => ModulusLabel::QInt { n },
            ModulusKind::QIntPhi => ModulusLabel::QIntPhi { n },
            ModulusKind::QIntSquared => ModulusLabel::QIntSq { n },
        }
    }
}

impl fmt::Display for ModulusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ModulusKind::Phi => "phi",
            ModulusKind::PhiSquared => "phi2",
            ModulusKind::QInt => "qint",
            ModulusKind::QIntPhi => "qint-phi",
            ModulusKind::QIntSquared => "qint-sq",
        };
        write!(f, "{}", name)
    }
}

/// Names the modulus families used by the divisibility checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModulusLabel {
    /// `Phi_n(q)^e`
    PhiPow { n: i64, e: u32 },
    /// `[n] = 1 + q + ... + q^(n-1)`
    QInt { n: i64 },
    /// `[n] * Phi_n(q)`
    QIntPhi { n: i64 },
    /// `[n]^2`
    QIntSq { n: i64 },
}

impl fmt::Display for ModulusLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModulusLabel::PhiPow { n, e } => write!(f, "phi_pow({},{})", n, e),
            ModulusLabel::QInt { n } => write!(f, "qint({})", n),
            ModulusLabel::QIntPhi { n } => write!(f, "qint_phi({})", n),
            ModulusLabel::QIntSq { n } => write!(f, "qint_sq({})", n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Modulus {
    poly: LaurentPoly,
    label: ModulusLabel,
}

impl Modulus {
    /// Wrap a nonzero ordinary polynomial of degree >= 1.
    pub fn new(poly: LaurentPoly, label: ModulusLabel) -> Result<Self> {
        if !poly.is_ordinary() || poly.degree().unwrap_or(0) < 1 {
            return Err(Error::invalid("modulus must be an ordinary polynomial of degree >= 1"));
        }
        Ok(Modulus { poly, label })
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn label(&self) -> ModulusLabel {
        self.label
    }

    pub fn degree(&self) -> i64 {
        self.poly.degree().unwrap()
    }

    /// Inverse of `q` in the quotient ring. With `m = c0 + q*t(q)` and
    /// `c0 != 0` this is `-t/c0`, no Euclidean pass needed.
    fn q_inverse(&self) -> Result<LaurentPoly> {
        let c0 = self.poly.constant_coeff();
        if c0.is_zero() {
            return Err(Error::invalid("q is not invertible: modulus has zero constant term"));
        }
        let t = (&self.poly - &LaurentPoly::constant(c0.clone())).shift(-1);
        Ok(t.scale(&(-c0.recip())))
    }
}

/// Element of `Q[q]/(m)`: a residue of degree `< deg m` plus a shared handle
/// to its modulus.
#[derive(Debug, Clone)]
pub struct QuotientElem {
    residue: LaurentPoly,
    modulus: Arc<Modulus>,
}

impl PartialEq for QuotientElem {
    fn eq(&self, other: &Self) -> bool {
        self.residue == other.residue && self.modulus.poly == other.modulus.poly
    }
}

impl QuotientElem {
    pub fn zero(modulus: Arc<Modulus>) -> Self {
        QuotientElem { residue: LaurentPoly::zero(), modulus }
    }

    pub fn one(modulus: Arc<Modulus>) -> Self {
        QuotientElem { residue: LaurentPoly::one(), modulus }
    }

    /// Reduce an arbitrary Laurent polynomial (negative exponents go through
    /// the inverse of `q`).
    pub fn from_poly(p: &LaurentPoly, modulus: Arc<Modulus>) -> Result<Self> {
        let (shift, ord) = p.split_q_power();
        let mut residue = ord.rem(modulus.poly())?;
        if shift != 0 && !residue.is_zero() {
            let base = if shift > 0 {
                LaurentPoly::q_power(1)
            } else {
                modulus.q_inverse()?
            };
            let power = pow_mod(&base, shift.unsigned_abs(), &modulus.poly);
            residue = mul_mod(&residue, &power, &modulus.poly);
        }
        Ok(QuotientElem { residue, modulus })
    }

    /// `q^e` as a residue; negative `e` uses the inverse of `q`.
    pub fn q_power(e: i64, modulus: Arc<Modulus>) -> Result<Self> {
        QuotientElem::from_poly(&LaurentPoly::q_power(e), modulus)
    }

    pub fn residue(&self) -> &LaurentPoly {
        &self.residue
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn check_same_modulus(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus.poly == other.modulus.poly,
            "quotient elements belong to different moduli"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        QuotientElem {
            residue: &self.residue + &other.residue,
            modulus: self.modulus.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        QuotientElem {
            residue: &self.residue - &other.residue,
            modulus: self.modulus.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        QuotientElem {
            residue: mul_mod(&self.residue, &other.residue, &self.modulus.poly),
            modulus: self.modulus.clone(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm; errors
    /// with the common factor when the element is not a unit.
    pub fn inverse(&self) -> Result<Self> {
        let inv = invert_mod(&self.residue, &self.modulus.poly)?;
        Ok(QuotientElem { residue: inv, modulus: self.modulus.clone() })
    }
}

fn mul_mod(a: &LaurentPoly, b: &LaurentPoly, m: &LaurentPoly) -> LaurentPoly {
    (a * b).rem(m).expect("modulus is ordinary and nonzero")
}

fn pow_mod(base: &LaurentPoly, mut e: u64, m: &LaurentPoly) -> LaurentPoly {
    let mut result = LaurentPoly::one();
    let mut acc = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &acc, m);
        }
        e >>= 1;
        if e > 0 {
            acc = mul_mod(&acc, &acc, m);
        }
    }
    result
}

/// Inverse of `a` modulo `m` over the rationals.
fn invert_mod(a: &LaurentPoly, m: &LaurentPoly) -> Result<LaurentPoly> {
    if a.is_zero() {
        return Err(Error::NonUnitDenominator { common: m.make_monic() });
    }
    let (mut r0, mut r1) = (m.clone(), a.rem(m)?);
    let (mut t0, mut t1) = (LaurentPoly::zero(), LaurentPoly::one());
    while !r1.is_zero() {
        let (quo, rem) = r0.div_rem(&r1)?;
        r0 = std::mem::replace(&mut r1, rem);
        let next = &t0 - &(&quo * &t1);
        t0 = std::mem::replace(&mut t1, next);
    }
    match r0.degree() {
        Some(0) => {
            let c = r0.constant_coeff();
            Ok(t0.scale(&c.recip()).rem(m)?)
        }
        _ => Err(Error::NonUnitDenominator { common: r0.make_monic() }),
    }
}

/// Project a rational function into `Q[q]/(m)`: `num * den^(-1) * q^offset`.
/// Requires the denominator (and `q`, when the numerator carries a negative
/// offset) to be a unit modulo `m`.
pub fn quotient_project(x: &RatFun, modulus: &Arc<Modulus>) -> Result<QuotientElem> {
    if x.is_zero() {
        return Ok(QuotientElem::zero(modulus.clone()));
    }
    let den_inv = invert_mod(x.den(), modulus.poly())?;
    let den_inv = QuotientElem { residue: den_inv, modulus: modulus.clone() };
    let num = QuotientElem::from_poly(x.num(), modulus.clone())?;
    Ok(num.mul(&den_inv))
}
