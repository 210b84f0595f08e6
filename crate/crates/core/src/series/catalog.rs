//! Named registry of every sum family the verifier knows, with per-family
//! parameter requirements and admissibility filters (residue classes, lower
//! bounds on `n`, and the residue-window condition of the step-`3m`
//! conjecture families).
//!
//! The mod-9 parametric entries pin the `a`-exponent patterns case by case;
//! no general rule generating them from `(r, n mod 9)` is assumed.

use std::sync::OnceLock;

use num_integer::Integer;

use crate::congruence::residue_mod;
use crate::error::{Error, Result};
use crate::exact::{ratio, ModulusKind};

use super::{family_conj56, family_main, family_parametric, family_triple, SeriesSpec, Truncation};

/// Free parameters a family may require; unused ones stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub d: Option<i64>,
    pub r: Option<i64>,
    pub m: Option<i64>,
}

impl FamilyParams {
    pub fn none() -> Self {
        FamilyParams::default()
    }

    pub fn dr(d: i64, r: i64) -> Self {
        FamilyParams { d: Some(d), r: Some(r), m: None }
    }

    pub fn mr(m: i64, r: i64) -> Self {
        FamilyParams { d: None, r: Some(r), m: Some(m) }
    }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    /// `family_main(d, r)`, full truncation.
    Main,
    /// `family_main(2, -1)` truncated at `(n+1)/2`.
    MainHalf,
    /// A fixed three-Pochhammer family with hard-coded residue classes.
    Triple {
        step: i64,
        exponents: [i64; 3],
        a_pattern: Option<([i64; 3], [i64; 3])>,
        residues: &'static [i64],
        min_n: i64,
    },
    /// `family_conj56(m, r, sign)` under the residue-window hypothesis.
    Conj56 { sign: i64 },
    /// `family_main(2, -1)` (optionally half-truncated) scanned against
    /// `[n]^2`.
    Conj1 { half: bool },
    /// `family_parametric(d, r)`.
    ParamMain,
}

/// One catalog row.
#[derive(Debug, Clone)]
pub struct FamilyEntry {
    id: &'static str,
    summary: &'static str,
    kind: Kind,
    conjecture: bool,
    default_modulus: ModulusKind,
}

impl FamilyEntry {
    pub fn id(&self) -> &'static str {
        self.id
    }

    pub fn summary(&self) -> &'static str {
        self.summary
    }

    /// Conjecture families are scanned, never "verified"; reports carry the
    /// flag so a finite scan cannot be mistaken for a theorem.
    pub fn is_conjecture(&self) -> bool {
        self.conjecture
    }

    /// Parametric families evaluate at `a = q^(+-n)` and certify vanishing
    /// instead of a polynomial divisibility.
    pub fn is_parametric(&self) -> bool {
        matches!(self.kind, Kind::ParamMain)
            || matches!(self.kind, Kind::Triple { a_pattern: Some(_), .. })
    }

    pub fn default_modulus(&self) -> ModulusKind {
        self.default_modulus
    }

    pub fn needs_d(&self) -> bool {
        matches!(self.kind, Kind::Main | Kind::ParamMain)
    }

    pub fn needs_r(&self) -> bool {
        matches!(self.kind, Kind::Main | Kind::ParamMain | Kind::Conj56 { .. })
    }

    pub fn needs_m(&self) -> bool {
        matches!(self.kind, Kind::Conj56 { .. })
    }

    fn require(&self, value: Option<i64>, name: &str) -> Result<i64> {
        value.ok_or_else(|| {
            Error::invalid(format!("family '{}' needs parameter {}", self.id, name))
        })
    }

    /// Instantiate the series for the given parameters.
    pub fn build(&self, params: &FamilyParams) -> Result<SeriesSpec> {
        match self.kind {
            Kind::Main => {
                family_main(self.require(params.d, "d")?, self.require(params.r, "r")?)
            }
            Kind::MainHalf => Ok(family_main(2, -1)?.with_truncation(Truncation::Half)),
            Kind::Triple { step, exponents, a_pattern, .. } => {
                family_triple(step, exponents, a_pattern)
            }
            Kind::Conj56 { sign } => {
                family_conj56(self.require(params.m, "m")?, self.require(params.r, "r")?, sign)
            }
            Kind::Conj1 { half: false } => family_main(2, -1),
            Kind::Conj1 { half: true } => {
                Ok(family_main(2, -1)?.with_truncation(Truncation::Half))
            }
            Kind::ParamMain => {
                family_parametric(self.require(params.d, "d")?, self.require(params.r, "r")?)
            }
        }
    }

    /// Whether `n` satisfies the family's stated hypotheses. Parameter errors
    /// (a malformed `(d, r)` pair, say) are reported as errors, not as
    /// inadmissibility.
    pub fn admissible(&self, params: &FamilyParams, n: i64) -> Result<bool> {
        if n < 1 {
            return Err(Error::invalid("n must be positive"));
        }
        match self.kind {
            Kind::Main | Kind::ParamMain => {
                let d = self.require(params.d, "d")?;
                let r = self.require(params.r, "r")?;
                // surface parameter problems eagerly
                family_main(d, r)?;
                Ok(n >= 2 && n >= d - r && (n + r).rem_euclid(d) == 0)
            }
            Kind::MainHalf | Kind::Conj1 { .. } => Ok(n >= 3 && n % 2 == 1),
            Kind::Triple { step, residues, min_n, .. } => {
                Ok(n >= min_n && residues.contains(&(n % step)))
            }
            Kind::Conj56 { sign } => {
                let m = self.require(params.m, "m")?;
                let r = self.require(params.r, "r")?;
                if m < 1 {
                    return Err(Error::invalid("m must be positive"));
                }
                let residue_ok = if sign == 1 { n % 3 == 2 } else { n > 1 && n % 3 == 1 };
                if !residue_ok || m.gcd(&n) != 1 {
                    return Ok(false);
                }
                // 0 < <r/(3m)>_n <= (2n-1)/3 resp. (2n-5)/3
                let t = residue_mod(&ratio(r, 3 * m), n)?;
                let bound = if sign == 1 { 2 * n - 1 } else { 2 * n - 5 };
                Ok(t > 0 && 3 * t <= bound)
            }
        }
    }

    /// The `count` smallest admissible `n`, scanning upward from 2.
    pub fn smallest_admissible(&self, params: &FamilyParams, count: usize) -> Result<Vec<i64>> {
        let mut found = Vec::with_capacity(count);
        let mut n = 2;
        while found.len() < count && n < 10_000 {
            if self.admissible(params, n)? {
                found.push(n);
            }
            n += 1;
        }
        Ok(found)
    }
}

pub struct FamilyCatalog {
    entries: Vec<FamilyEntry>,
}

impl FamilyCatalog {
    pub fn get(&self, id: &str) -> Option<&FamilyEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn entries(&self) -> impl Iterator<Item = &FamilyEntry> {
        self.entries.iter()
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.id).collect()
    }
}

/// The process-wide catalog.
pub fn catalog() -> &'static FamilyCatalog {
    static CATALOG: OnceLock<FamilyCatalog> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

fn build_catalog() -> FamilyCatalog {
    use ModulusKind::*;
    let mut entries = Vec::new();
    let mut push = |id, summary, kind, conjecture, default_modulus| {
        entries.push(FamilyEntry { id, summary, kind, conjecture, default_modulus });
    };

    push(
        "main",
        "(q^r; q^d)_k^d q^(dk) / (q^d; q^d)_k^d, n = -r mod d",
        Kind::Main,
        false,
        PhiSquared,
    );
    push(
        "main-half",
        "d=2, r=-1 variant truncated at (n+1)/2, odd n",
        Kind::MainHalf,
        false,
        QIntPhi,
    );
    push(
        "sextic-pos",
        "(q, q, q^4; q^6)_k q^(6k) / (q^6; q^6)_k^3, n = 5 mod 6",
        Kind::Triple {
            step: 6,
            exponents: [1, 1, 4],
            a_pattern: None,
            residues: &[5],
            min_n: 2,
        },
        false,
        PhiSquared,
    );
    push(
        "sextic-neg",
        "(q^-1, q^-1, q^-4; q^6)_k q^(6k) / (q^6; q^6)_k^3, n = 1 mod 6",
        Kind::Triple {
            step: 6,
            exponents: [-1, -1, -4],
            a_pattern: None,
            residues: &[1],
            min_n: 2,
        },
        false,
        PhiSquared,
    );
    push(
        "nonic-r1",
        "(q, q, q^7; q^9)_k q^(9k) / (q^9; q^9)_k^3, n = 2, 8 mod 9",
        Kind::Triple {
            step: 9,
            exponents: [1, 1, 7],
            a_pattern: None,
            residues: &[2, 8],
            min_n: 2,
        },
        false,
        PhiSquared,
    );
    push(
        "nonic-r2",
        "(q^2, q^2, q^5; q^9)_k q^(9k) / (q^9; q^9)_k^3, n = 4, 7 mod 9",
        Kind::Triple {
            step: 9,
            exponents: [2, 2, 5],
            a_pattern: None,
            residues: &[4, 7],
            min_n: 2,
        },
        false,
        PhiSquared,
    );
    push(
        "nonic-r4",
        "(q^4, q^4, q; q^9)_k q^(9k) / (q^9; q^9)_k^3, n = 5, 8 mod 9",
        Kind::Triple {
            step: 9,
            exponents: [4, 4, 1],
            a_pattern: None,
            residues: &[5, 8],
            min_n: 2,
        },
        false,
        PhiSquared,
    );
    push(
        "nonic-neg-r1",
        "(q^-1, q^-1, q^-7; q^9)_k q^(9k) / (q^9; q^9)_k^3, n = 5 mod 9, n > 9",
        Kind::Triple {
            step: 9,
            exponents: [-1, -1, -7],
            a_pattern: None,
            residues: &[5],
            min_n: 10,
        },
        false,
        PhiSquared,
    );
    push(
        "nonic-neg-r2",
        "(q^-2, q^-2, q^-5; q^9)_k q^(9k) / (q^9; q^9)_k^3, n = 2, 5 mod 9, n > 9",
        Kind::Triple {
            step: 9,
            exponents: [-2, -2, -5],
            a_pattern: None,
            residues: &[2, 5],
            min_n: 10,
        },
        false,
        PhiSquared,
    );
    push(
        "nonic-neg-r4",
        "(q^-4, q^-4, q^-1; q^9)_k q^(9k) / (q^9; q^9)_k^3, n = 2 mod 9, n > 9",
        Kind::Triple {
            step: 9,
            exponents: [-4, -4, -1],
            a_pattern: None,
            residues: &[2],
            min_n: 10,
        },
        false,
        PhiSquared,
    );
    push(
        "conj1",
        "main family at d=2, r=-1 against [n]^2, odd n",
        Kind::Conj1 { half: false },
        true,
        QIntSquared,
    );
    push(
        "conj1-half",
        "half-truncated main family at d=2, r=-1 against [n]^2, odd n",
        Kind::Conj1 { half: true },
        true,
        QIntSquared,
    );
    push(
        "conj3",
        "(q, q^2, q^6; q^9)_k q^(9k) / (q^9; q^9)_k^3, n = 4, 7 mod 9",
        Kind::Triple {
            step: 9,
            exponents: [1, 2, 6],
            a_pattern: None,
            residues: &[4, 7],
            min_n: 2,
        },
        true,
        PhiSquared,
    );
    push(
        "conj4",
        "(q^-1, q^-2, q^-6; q^9)_k q^(9k) / (q^9; q^9)_k^3, n = 5 mod 9",
        Kind::Triple {
            step: 9,
            exponents: [-1, -2, -6],
            a_pattern: None,
            residues: &[5],
            min_n: 2,
        },
        true,
        PhiSquared,
    );
    push(
        "conj5",
        "(q^m, q^r, q^(2m-r); q^(3m))_k over (q^(3m); q^(3m))_k^3, n = 2 mod 3",
        Kind::Conj56 { sign: 1 },
        true,
        PhiSquared,
    );
    push(
        "conj6",
        "(q^-m, q^r, q^(-2m-r); q^(3m))_k over (q^(3m); q^(3m))_k^3, n = 1 mod 3",
        Kind::Conj56 { sign: -1 },
        true,
        PhiSquared,
    );
    push(
        "param-main",
        "a-decorated main family, certified at a = q^(+-n)",
        Kind::ParamMain,
        false,
        PhiSquared,
    );
    push(
        "param-sextic-pos",
        "(a^5 q, q/a^5, q^4; q^6)_k / (a^4 q^6, q^6/a^4, q^6; q^6)_k, n = 5 mod 6",
        Kind::Triple {
            step: 6,
            exponents: [1, 1, 4],
            a_pattern: Some(([5, -5, 0], [4, -4, 0])),
            residues: &[5],
            min_n: 2,
        },
        false,
        PhiSquared,
    );
    push(
        "param-sextic-neg",
        "(a^5/q, q^-1/a^5, q^-4; q^6)_k / (a^4 q^6, q^6/a^4, q^6; q^6)_k, n = 1 mod 6",
        Kind::Triple {
            step: 6,
            exponents: [-1, -1, -4],
            a_pattern: Some(([5, -5, 0], [4, -4, 0])),
            residues: &[1],
            min_n: 2,
        },
        false,
        PhiSquared,
    );
    for (id, summary, r, pattern, residues) in [
        (
            "param-nonic-r1-a5",
            "(a^5 q, q/a^5, q^7; q^9)_k / (a q^9, q^9/a, q^9; q^9)_k, n = 2 mod 9",
            1i64,
            ([5, -5, 0], [1, -1, 0]),
            &[2][..],
        ),
        (
            "param-nonic-r1-a8",
            "(a^8 q, q/a^8, q^7; q^9)_k / (a^7 q^9, q^9/a^7, q^9; q^9)_k, n = 8 mod 9",
            1,
            ([8, -8, 0], [7, -7, 0]),
            &[8][..],
        ),
        (
            "param-nonic-r2-a5",
            "(a^5 q^2, q^2/a^5, q^5; q^9)_k / (a q^9, q^9/a, q^9; q^9)_k, n = 4 mod 9",
            2,
            ([5, -5, 0], [1, -1, 0]),
            &[4][..],
        ),
        (
            "param-nonic-r2-a8",
            "(a^8 q^2, q^2/a^8, q^5; q^9)_k / (a^7 q^9, q^9/a^7, q^9; q^9)_k, n = 7 mod 9",
            2,
            ([8, -8, 0], [7, -7, 0]),
            &[7][..],
        ),
        (
            "param-nonic-r4-a5",
            "(a^5 q^4, q^4/a^5, q; q^9)_k / (a q^9, q^9/a, q^9; q^9)_k, n = 8 mod 9",
            4,
            ([5, -5, 0], [1, -1, 0]),
            &[8][..],
        ),
        (
            "param-nonic-r4-a8",
            "(a^8 q^4, q^4/a^8, q; q^9)_k / (a^7 q^9, q^9/a^7, q^9; q^9)_k, n = 5 mod 9",
            4,
            ([8, -8, 0], [7, -7, 0]),
            &[5][..],
        ),
    ] {
        let exponents = [r, r, 9 - 2 * r];
        entries.push(FamilyEntry {
            id,
            summary,
            kind: Kind::Triple { step: 9, exponents, a_pattern: Some(pattern), residues, min_n: 2 },
            conjecture: false,
            default_modulus: PhiSquared,
        });
    }
    for (id, summary, exponents, pattern, residues, min_n) in [
        (
            "param-nonic-neg-r1-a7",
            "(a^7 q^-1, q^-1/a^7, q^-7; q^9)_k / (a^5 q^9, q^9/a^5, q^9; q^9)_k, n = 5 mod 9",
            [-1i64, -1, -7],
            ([7i64, -7, 0], [5i64, -5, 0]),
            &[5][..],
            2i64,
        ),
        (
            "param-nonic-neg-r2-a8",
            "(a^8 q^-2, q^-2/a^8, q^-5; q^9)_k / (a^7 q^9, q^9/a^7, q^9; q^9)_k, n = 2 mod 9, n > 9",
            [-2, -2, -5],
            ([8, -8, 0], [7, -7, 0]),
            &[2][..],
            10,
        ),
        (
            "param-nonic-neg-r2-a5",
            "(a^5 q^-2, q^-2/a^5, q^-5; q^9)_k / (a q^9, q^9/a, q^9; q^9)_k, n = 5 mod 9, n > 9",
            [-2, -2, -5],
            ([5, -5, 0], [1, -1, 0]),
            &[5][..],
            10,
        ),
        (
            "param-nonic-neg-r4-a7",
            "(a^7 q^-4, q^-4/a^7, q^-1; q^9)_k / (a^5 q^9, q^9/a^5, q^9; q^9)_k, n = 2 mod 9, n > 9",
            [-4, -4, -1],
            ([7, -7, 0], [5, -5, 0]),
            &[2][..],
            10,
        ),
    ] {
        entries.push(FamilyEntry {
            id,
            summary,
            kind: Kind::Triple { step: 9, exponents, a_pattern: Some(pattern), residues, min_n },
            conjecture: false,
            default_modulus: PhiSquared,
        });
    }

    FamilyCatalog { entries }
}
