//! Instance enumeration, parallel execution, and report emission.
//!
//! Reports are gathered, sorted by instance identity, and emitted as one JSON
//! object per line, so identical requests produce identical report streams no
//! matter how many worker threads ran them (timing fields aside).

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rayon::prelude::*;

use cyclofactor_core::congruence::{
    check_divisibility_with, gz_rv_check, padic_rv_check, parametric_vanishes, CongruenceReport,
};
use cyclofactor_core::exact::{LaurentPoly, ModulusKind};
use cyclofactor_core::qfun::{cyclotomic, q_integer, qbino_identity_check};
use cyclofactor_core::series::{catalog, FamilyEntry, FamilyParams};

use crate::{ClassicArgs, ClassicCheck, IdentityArgs, IdentityCheck, RangeArg, ScanArgs};

struct Instance {
    params: FamilyParams,
    n: i64,
}

fn n_values(
    n: Option<i64>,
    n_min: Option<i64>,
    n_max: Option<i64>,
) -> Result<Vec<i64>, String> {
    match (n, n_min, n_max) {
        (Some(n), _, _) => Ok(vec![n]),
        (None, Some(lo), Some(hi)) if lo <= hi => Ok((lo..=hi).collect()),
        (None, Some(lo), Some(hi)) => Err(format!("empty n range {}..{}", lo, hi)),
        _ => Err("give either --n or both --n-min and --n-max".into()),
    }
}

fn param_combos(entry: &FamilyEntry, args: &ScanArgs) -> Result<Vec<FamilyParams>, String> {
    let expand = |range: Option<RangeArg>, needed: bool, name: &str| -> Result<Vec<Option<i64>>, String> {
        match (range, needed) {
            (Some(r), true) => Ok(r.iter().map(Some).collect()),
            (None, true) => Err(format!("family '{}' needs --{}", entry.id(), name)),
            (None, false) => Ok(vec![None]),
            (Some(_), false) => Err(format!("family '{}' does not take --{}", entry.id(), name)),
        }
    };
    let ds = expand(args.d, entry.needs_d(), "d")?;
    let rs = expand(args.r, entry.needs_r(), "r")?;
    let ms = expand(args.m, entry.needs_m(), "m")?;
    let mut combos = Vec::new();
    for &d in &ds {
        for &r in &rs {
            for &m in &ms {
                combos.push(FamilyParams { d, r, m });
            }
        }
    }
    Ok(combos)
}

pub fn run_scan(args: &ScanArgs, conjecture_mode: bool) -> Result<bool, String> {
    let entry = catalog().get(&args.family).ok_or_else(|| unknown_family(&args.family))?;
    if entry.is_parametric() {
        return Err(format!(
            "family '{}' is parametric; use `identity --check parametric`",
            entry.id()
        ));
    }
    if entry.is_conjecture() != conjecture_mode {
        return Err(if conjecture_mode {
            format!("family '{}' is a proved family; use `verify`", entry.id())
        } else {
            format!("family '{}' is a conjecture family; use `scan`", entry.id())
        });
    }

    let combos = param_combos(entry, args)?;
    let ns = n_values(args.n, args.n_min, args.n_max)?;
    let kind = args.modulus.map(ModulusKind::from).unwrap_or_else(|| entry.default_modulus());

    let single_combo = combos.len() == 1;
    let mut instances = Vec::new();
    for params in combos {
        // a lone malformed parameter pair is a usage error; inside a sweep it
        // is just skipped
        match entry.admissible(&params, 1).map(|_| ()) {
            Ok(()) => {}
            Err(e) if single_combo => return Err(e.to_string()),
            Err(_) => continue,
        }
        for &n in &ns {
            if n < 2 {
                continue;
            }
            let admissible = entry.admissible(&params, n).map_err(|e| e.to_string())?;
            if admissible || args.force_inadmissible {
                instances.push(Instance { params, n });
            } else if args.verbose {
                eprintln!(
                    "skip {} {} n={} (inadmissible)",
                    entry.id(),
                    describe_params(&params),
                    n
                );
            }
        }
    }

    let engines = args.engine.engines(kind);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    let results: Vec<Result<CongruenceReport, String>> = pool.install(|| {
        instances
            .par_iter()
            .flat_map_iter(|instance| {
                engines.iter().map(move |&engine| {
                    let spec = entry.build(&instance.params).map_err(|e| e.to_string())?;
                    check_divisibility_with(&spec, instance.n, kind, engine)
                        .map(|r| r.labeled(entry.id(), &instance.params, entry.is_conjecture()))
                        .map_err(|e| e.to_string())
                })
            })
            .collect()
    });
    let mut reports = results.into_iter().collect::<Result<Vec<_>, String>>()?;
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));

    emit_reports(&reports, args.out.as_ref())?;
    summarize(&reports);
    let ok = reports.iter().all(|r| !r.failed());
    if !ok {
        for report in reports.iter().filter(|r| r.failed()) {
            let witness = report.witness.as_ref().expect("fail carries witness");
            eprintln!(
                "FAIL {} ({} truncation) n={} mod {}: witness degree {}, leading coefficients [{}]",
                report.family,
                report.params.truncation,
                report.params.n,
                report.modulus_label,
                witness.degree().unwrap_or(0),
                leading_coefficients(witness, 3)
            );
        }
    }
    Ok(ok)
}

fn unknown_family(name: &str) -> String {
    format!("unknown family '{}'; available: {}", name, catalog().ids().join(", "))
}

fn describe_params(params: &FamilyParams) -> String {
    let mut parts = Vec::new();
    if let Some(d) = params.d {
        parts.push(format!("d={}", d));
    }
    if let Some(r) = params.r {
        parts.push(format!("r={}", r));
    }
    if let Some(m) = params.m {
        parts.push(format!("m={}", m));
    }
    parts.join(" ")
}

fn leading_coefficients(poly: &LaurentPoly, count: usize) -> String {
    let terms: Vec<(i64, String)> =
        poly.terms().map(|(e, c)| (e, c.to_string())).collect();
    terms
        .iter()
        .rev()
        .take(count)
        .map(|(e, c)| format!("{}*q^{}", c, e))
        .collect::<Vec<_>>()
        .join(", ")
}

fn emit_reports(reports: &[CongruenceReport], out: Option<&PathBuf>) -> Result<(), String> {
    let lines: Vec<String> = reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("report serializes"))
        .collect();
    emit_lines(&lines, out)
}

fn emit_lines(lines: &[String], out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| format!("cannot write {:?}: {}", path, e))?;
            let mut writer = BufWriter::new(file);
            for line in lines {
                writeln!(writer, "{}", line).map_err(|e| e.to_string())?;
            }
            writer.flush().map_err(|e| e.to_string())
        }
        None => {
            let stdout = std::io::stdout();
            let mut writer = stdout.lock();
            for line in lines {
                writeln!(writer, "{}", line).map_err(|e| e.to_string())?;
            }
            Ok(())
        }
    }
}

fn summarize(reports: &[CongruenceReport]) {
    if reports.is_empty() {
        eprintln!("no admissible instances");
        return;
    }
    let mut groups: BTreeMap<String, (usize, usize, usize, u64)> = BTreeMap::new();
    for report in reports {
        let modulus = match report.modulus_label {
            cyclofactor_core::exact::ModulusLabel::PhiPow { e: 1, .. } => "phi",
            cyclofactor_core::exact::ModulusLabel::PhiPow { .. } => "phi2",
            cyclofactor_core::exact::ModulusLabel::QInt { .. } => "qint",
            cyclofactor_core::exact::ModulusLabel::QIntPhi { .. } => "qint-phi",
            cyclofactor_core::exact::ModulusLabel::QIntSq { .. } => "qint-sq",
        };
        let key = format!(
            "{} {} mod {} [{:?}]",
            report.family,
            describe_params(&FamilyParams {
                d: report.params.d,
                r: report.params.r,
                m: report.params.m
            }),
            modulus,
            report.engine
        );
        let entry = groups.entry(key).or_insert((0, 0, 0, 0));
        match report.verdict {
            cyclofactor_core::congruence::Verdict::Pass => entry.0 += 1,
            cyclofactor_core::congruence::Verdict::Fail => entry.1 += 1,
            cyclofactor_core::congruence::Verdict::NotApplicable => entry.2 += 1,
        }
        entry.3 += report.elapsed_ms;
    }
    for (key, (pass, fail, na, ms)) in groups {
        eprintln!("{}: {} pass, {} fail, {} n/a ({} ms)", key, pass, fail, na, ms);
    }
}

pub fn run_identity(args: &IdentityArgs) -> Result<bool, String> {
    let mut lines = Vec::new();
    let mut all_ok = true;
    match args.check {
        IdentityCheck::Qbino => {
            let n_max = args.n_max.unwrap_or(20);
            for n in 1..=n_max {
                for j in 0..n {
                    let ok = qbino_identity_check(n, j).map_err(|e| e.to_string())?;
                    all_ok &= ok;
                    lines.push(format!(r#"{{"check":"qbino","n":{},"j":{},"ok":{}}}"#, n, j, ok));
                }
            }
        }
        IdentityCheck::Products => {
            let n_max = args.n_max.unwrap_or(60);
            for n in 1..=n_max {
                let mut all = LaurentPoly::one();
                let mut proper = LaurentPoly::one();
                for d in 1..=n {
                    if n % d == 0 {
                        all = all * (*cyclotomic(d)).clone();
                        if d > 1 {
                            proper = proper * (*cyclotomic(d)).clone();
                        }
                    }
                }
                let ok = all == LaurentPoly::q_power(n) - LaurentPoly::one()
                    && proper == q_integer(n);
                all_ok &= ok;
                lines.push(format!(r#"{{"check":"products","n":{},"ok":{}}}"#, n, ok));
            }
        }
        IdentityCheck::PhiSubst => {
            let n_max = args.n_max.unwrap_or(20);
            for n in 1..=n_max {
                for m in 1..=6i64 {
                    if num_integer_gcd(m, n) != 1 {
                        continue;
                    }
                    let phi = cyclotomic(n);
                    let ok = phi
                        .substitute_q_power(m)
                        .map_err(|e| e.to_string())?
                        .exact_div(&phi)
                        .is_ok();
                    all_ok &= ok;
                    lines.push(format!(
                        r#"{{"check":"phi-subst","n":{},"m":{},"ok":{}}}"#,
                        n, m, ok
                    ));
                }
            }
        }
        IdentityCheck::Parametric => {
            let family = args
                .family
                .as_ref()
                .ok_or("parametric check needs --family")?;
            let entry = catalog().get(family).ok_or_else(|| unknown_family(family))?;
            if !entry.is_parametric() {
                return Err(format!("family '{}' has no parametric form", family));
            }
            let params = FamilyParams {
                d: args.d.map(|r| r.min),
                r: args.r.map(|r| r.min),
                m: None,
            };
            let spec = entry.build(&params).map_err(|e| e.to_string())?;
            let ns = match (args.n, args.n_min, args.n_max) {
                (None, None, None) => {
                    entry.smallest_admissible(&params, 3).map_err(|e| e.to_string())?
                }
                (n, lo, hi) => n_values(n, lo, hi)?
                    .into_iter()
                    .filter(|&n| entry.admissible(&params, n).unwrap_or(false))
                    .collect(),
            };
            for n in ns {
                let ok = parametric_vanishes(&spec, n).map_err(|e| e.to_string())?;
                all_ok &= ok;
                lines.push(format!(
                    r#"{{"check":"parametric","family":"{}","n":{},"ok":{}}}"#,
                    family, n, ok
                ));
            }
        }
    }
    emit_lines(&lines, args.out.as_ref())?;
    eprintln!("{} checks, {}", lines.len(), if all_ok { "all hold" } else { "FAILURES present" });
    Ok(all_ok)
}

fn num_integer_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn run_classic(args: &ClassicArgs) -> Result<bool, String> {
    let mut lines = Vec::new();
    let mut all_ok = true;
    match args.check {
        ClassicCheck::Rv => {
            let lo = args.n_min.unwrap_or(3).max(3);
            let hi = args.n_max.unwrap_or(13);
            for p in lo..=hi {
                if p % 2 == 0 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                    continue;
                }
                let ok = padic_rv_check(p).map_err(|e| e.to_string())?;
                all_ok &= ok;
                lines.push(format!(r#"{{"check":"rv","p":{},"ok":{}}}"#, p, ok));
            }
        }
        ClassicCheck::Gz => {
            let lo = args.n_min.unwrap_or(3).max(3);
            let hi = args.n_max.unwrap_or(15);
            for n in lo..=hi {
                if n % 2 == 0 {
                    continue;
                }
                let ok = gz_rv_check(n).map_err(|e| e.to_string())?;
                all_ok &= ok;
                lines.push(format!(r#"{{"check":"gz","n":{},"ok":{}}}"#, n, ok));
            }
        }
    }
    emit_lines(&lines, args.out.as_ref())?;
    eprintln!("{} checks, {}", lines.len(), if all_ok { "all hold" } else { "FAILURES present" });
    Ok(all_ok)
}
