//! Command-line driver: instantiate sum families over parameter ranges, run
//! divisibility verdicts, and emit JSON-lines reports.
//!
//! Exit codes: 0 when every attempted instance passes (or is skipped),
//! 1 when at least one instance fails, 2 on usage or internal errors.

mod runner;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclofactor_core::congruence::Engine;
use cyclofactor_core::exact::ModulusKind;

#[derive(Parser)]
#[command(name = "cyclofactor", version, about = "Exact divisibility checks for truncated q-series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify proved families over a parameter range.
    Verify(ScanArgs),
    /// Scan conjecture families; reports carry a conjecture flag.
    Scan(ScanArgs),
    /// Exact identity checks: binomial sums, cyclotomic products,
    /// composition divisibility, and parametric vanishing.
    Identity(IdentityArgs),
    /// Classical checks: the central-binomial supercongruence and its
    /// q-analogue.
    Classic(ClassicArgs),
}

/// Inclusive integer range written `N` or `A..B`.
#[derive(Clone, Copy, Debug)]
pub struct RangeArg {
    pub min: i64,
    pub max: i64,
}

impl RangeArg {
    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.min..=self.max
    }
}

fn parse_range(s: &str) -> Result<RangeArg, String> {
    if let Some((lo, hi)) = s.split_once("..") {
        let min = lo.trim().parse::<i64>().map_err(|e| format!("bad range start: {}", e))?;
        let max = hi.trim().parse::<i64>().map_err(|e| format!("bad range end: {}", e))?;
        if min > max {
            return Err(format!("empty range {}..{}", min, max));
        }
        Ok(RangeArg { min, max })
    } else {
        let v = s.trim().parse::<i64>().map_err(|e| format!("bad integer: {}", e))?;
        Ok(RangeArg { min: v, max: v })
    }
}

#[derive(Args)]
struct ScanArgs {
    /// Family identifier from the catalog.
    #[arg(long)]
    family: String,

    /// Value or range for the step parameter d (families that need it).
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    d: Option<RangeArg>,

    /// Value or range for the exponent parameter r.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    r: Option<RangeArg>,

    /// Value or range for the multiplier parameter m.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    m: Option<RangeArg>,

    /// Single n to check.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<i64>,

    #[arg(long = "n-min")]
    n_min: Option<i64>,

    #[arg(long = "n-max")]
    n_max: Option<i64>,

    /// Modulus family; defaults to the catalog's choice for the family.
    #[arg(long)]
    modulus: Option<ModulusArg>,

    /// Engine selection; `both` emits one report per engine.
    #[arg(long, default_value = "default")]
    engine: EngineArg,

    /// Worker threads for independent instances.
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Write JSON-lines here instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,

    /// Check every n in range, ignoring the family's admissibility filter.
    #[arg(long)]
    force_inadmissible: bool,

    /// Log skipped (inadmissible) instances to standard error.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(long)]
    check: IdentityCheck,

    /// Parametric vanishing: which family to certify.
    #[arg(long)]
    family: Option<String>,

    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    d: Option<RangeArg>,

    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    r: Option<RangeArg>,

    #[arg(long)]
    n: Option<i64>,

    #[arg(long = "n-min")]
    n_min: Option<i64>,

    /// Upper bound for the identity sweeps.
    #[arg(long = "n-max")]
    n_max: Option<i64>,

    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdentityCheck {
    /// Alternating q-binomial sums vanish for shifts 0..n-1.
    Qbino,
    /// Cyclotomic products rebuild q^n - 1 and the q-integer.
    Products,
    /// Phi_n(q) divides Phi_n(q^m) for gcd(m, n) = 1.
    PhiSubst,
    /// Parametric sums vanish at a = q^(+-n).
    Parametric,
}

#[derive(Args)]
struct ClassicArgs {
    #[arg(long)]
    check: ClassicCheck,

    #[arg(long = "n-min")]
    n_min: Option<i64>,

    #[arg(long = "n-max")]
    n_max: Option<i64>,

    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassicCheck {
    /// Central-binomial sums modulo p^2 over odd primes.
    Rv,
    /// Truncated q-analogue modulo Phi_n(q)^2 (and [n]^2 at primes).
    Gz,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModulusArg {
    Phi,
    Phi2,
    Qint,
    QintPhi,
    QintSq,
}

impl From<ModulusArg> for ModulusKind {
    fn from(arg: ModulusArg) -> ModulusKind {
        match arg {
            ModulusArg::Phi => ModulusKind::Phi,
            ModulusArg::Phi2 => ModulusKind::PhiSquared,
            ModulusArg::Qint => ModulusKind::QInt,
            ModulusArg::QintPhi => ModulusKind::QIntPhi,
            ModulusArg::QintSq => ModulusKind::QIntSquared,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    /// Catalog default: quotient ring for phi moduli, exact otherwise.
    Default,
    Exact,
    Quotient,
    /// Run both engines and emit one report per engine.
    Both,
}

impl EngineArg {
    fn engines(self, kind: ModulusKind) -> Vec<Engine> {
        match self {
            EngineArg::Default => vec![Engine::default_for(kind)],
            EngineArg::Exact => vec![Engine::Exact],
            EngineArg::Quotient => vec![Engine::Quotient],
            EngineArg::Both => vec![Engine::Exact, Engine::Quotient],
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => runner::run_scan(&args, false),
        Command::Scan(args) => runner::run_scan(&args, true),
        Command::Identity(args) => runner::run_identity(&args),
        Command::Classic(args) => runner::run_classic(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}
