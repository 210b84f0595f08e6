//! Exact verification of cyclotomic divisibility for truncated basic
//! hypergeometric sums.
//!
//! The crate is organized in four layers:
//! - [`exact`]: big-rational Laurent polynomials, canonical rational
//!   functions, and quotient-ring residues;
//! - [`qfun`]: cyclotomic polynomials, q-integers, q-shifted factorials and
//!   q-binomial coefficients;
//! - [`series`]: symbolic descriptions of the truncated sum families and two
//!   evaluation engines (exact rational-function and quotient-ring);
//! - [`congruence`]: divisibility verdicts with witnesses, plus the classical
//!   central-binomial and q-analogue checks.

pub mod congruence;
pub mod error;
pub mod exact;
pub mod qfun;
pub mod series;

pub use error::{Error, Result};
