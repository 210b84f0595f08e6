//! Outcome records for divisibility checks, shaped for JSON-lines emission.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact::{LaurentPoly, ModulusKind, ModulusLabel};
use crate::series::FamilyParams;

/// Which summation engine produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Exact,
    Quotient,
}

impl Engine {
    /// The default split: quotient arithmetic for the small `Phi_n^e` moduli,
    /// the exact engine for the `[n]`-product moduli (whose factors are not
    /// units term by term).
    pub fn default_for(kind: ModulusKind) -> Engine {
        match kind {
            ModulusKind::Phi | ModulusKind::PhiSquared => Engine::Quotient,
            _ => Engine::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

/// The instance parameters, echoed into every report line.
#[derive(Debug, Clone, Serialize)]
pub struct ReportParams {
    pub d: Option<i64>,
    pub r: Option<i64>,
    pub m: Option<i64>,
    pub n: i64,
    pub truncation: &'static str,
}

/// One divisibility verdict with its diagnostics.
#[derive(Debug, Clone)]
pub struct CongruenceReport {
    pub family: String,
    pub params: ReportParams,
    pub modulus_label: ModulusLabel,
    pub verdict: Verdict,
    /// The nonzero remainder, present exactly when the verdict is `fail`.
    pub witness: Option<LaurentPoly>,
    /// Power of `q` cleared off the numerator before the divisibility test.
    pub q_power_cleared: i64,
    pub elapsed_ms: u64,
    pub engine: Engine,
    /// Set for conjecture families: a finite scan, not a proof.
    pub conjecture: bool,
}

impl CongruenceReport {
    /// Stamp the identity fields a driver knows and the checker does not.
    pub fn labeled(mut self, family: &str, params: &FamilyParams, conjecture: bool) -> Self {
        self.family = family.to_string();
        self.params.d = params.d;
        self.params.r = params.r;
        self.params.m = params.m;
        self.conjecture = conjecture;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// Deterministic output order: reports sort by instance identity, never
    /// by completion time.
    pub fn sort_key(&self) -> impl Ord + '_ {
        (
            self.family.clone(),
            self.params.d,
            self.params.r,
            self.params.m,
            self.params.n,
            self.params.truncation,
            self.modulus_label,
            self.engine,
        )
    }
}

impl Serialize for CongruenceReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CongruenceReport", 9)?;
        s.serialize_field("family", &self.family)?;
        s.serialize_field("params", &self.params)?;
        s.serialize_field("modulus_label", &self.modulus_label.to_string())?;
        s.serialize_field("verdict", &self.verdict)?;
        s.serialize_field("witness", &self.witness.as_ref().map(|w| w.to_string()))?;
        s.serialize_field("q_power_cleared", &self.q_power_cleared)?;
        s.serialize_field("engine", &self.engine)?;
        s.serialize_field("conjecture", &self.conjecture)?;
        s.serialize_field("elapsed_ms", &self.elapsed_ms)?;
        s.end()
    }
}
