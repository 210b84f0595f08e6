//! End-to-end tests of the command-line interface: exit codes, report
//! streams, admissibility filtering, and determinism across worker counts.

use std::process::{Command, Output};

fn cyclofactor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclofactor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(output: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

fn strip_elapsed(raw: &[u8]) -> String {
    let text = String::from_utf8_lossy(raw);
    text.lines()
        .map(|line| {
            let mut v: serde_json::Value = serde_json::from_str(line).unwrap();
            v.as_object_mut().unwrap().remove("elapsed_ms");
            v.to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn verify_main_family_reports_admissible_instances() {
    let out = cyclofactor(&[
        "verify", "--family", "main", "--d", "3", "--r", "1", "--n-min", "2", "--n-max", "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let ns: Vec<i64> = lines.iter().map(|v| v["params"]["n"].as_i64().unwrap()).collect();
    assert_eq!(ns, vec![2, 5, 8, 11, 14, 17, 20]);
    assert!(lines.iter().all(|v| v["verdict"] == "pass"));
    assert!(lines.iter().all(|v| v["conjecture"] == false));
    assert!(lines.iter().all(|v| v["modulus_label"].as_str().unwrap().starts_with("phi_pow")));
}

#[test]
fn verify_sextic_family_residue_filter() {
    let out = cyclofactor(&[
        "verify", "--family", "sextic-pos", "--n-min", "1", "--n-max", "25",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let ns: Vec<i64> =
        stdout_lines(&out).iter().map(|v| v["params"]["n"].as_i64().unwrap()).collect();
    assert_eq!(ns, vec![5, 11, 17, 23]);
}

#[test]
fn empty_admissible_set_is_fine() {
    let out = cyclofactor(&[
        "verify", "--family", "main", "--d", "3", "--r", "1", "--n", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn forced_inadmissible_instance_fails_with_witness() {
    let out = cyclofactor(&[
        "verify", "--family", "main", "--d", "3", "--r", "1", "--n", "4",
        "--force-inadmissible", "--engine", "exact",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["verdict"], "fail");
    assert!(lines[0]["witness"].as_str().is_some());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("witness degree"), "stderr: {}", stderr);
}

#[test]
fn unknown_family_is_usage_error() {
    let out = cyclofactor(&["verify", "--family", "nonsense", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_range_is_usage_error() {
    let out = cyclofactor(&[
        "verify", "--family", "main", "--d", "9..2", "--r", "1", "--n", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_refuses_proved_families_and_verify_refuses_conjectures() {
    let out = cyclofactor(&["scan", "--family", "main", "--d", "3", "--r", "1", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cyclofactor(&["verify", "--family", "conj3", "--n", "13"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_conjecture_family_sets_flag() {
    let out = cyclofactor(&["scan", "--family", "conj3", "--n-min", "2", "--n-max", "25"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let ns: Vec<i64> = lines.iter().map(|v| v["params"]["n"].as_i64().unwrap()).collect();
    assert_eq!(ns, vec![4, 7, 13, 16, 22, 25]);
    assert!(lines.iter().all(|v| v["conjecture"] == true));
    assert!(lines.iter().all(|v| v["verdict"] == "pass"));
}

#[test]
fn reports_are_deterministic_across_job_counts() {
    let args_base = [
        "verify", "--family", "main", "--d", "2..4", "--r", "-3..1", "--n-min", "2", "--n-max",
        "10",
    ];
    let one = cyclofactor(&[&args_base[..], &["--jobs", "1"]].concat());
    let four = cyclofactor(&[&args_base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(four.status.code(), Some(0));
    assert!(!one.stdout.is_empty());
    assert_eq!(strip_elapsed(&one.stdout), strip_elapsed(&four.stdout));
}

#[test]
fn engine_both_emits_two_reports_per_instance() {
    let out = cyclofactor(&[
        "verify", "--family", "main", "--d", "3", "--r", "1", "--n", "5", "--engine", "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 2);
    let engines: Vec<&str> = lines.iter().map(|v| v["engine"].as_str().unwrap()).collect();
    assert_eq!(engines, vec!["exact", "quotient"]);
    assert!(lines.iter().all(|v| v["verdict"] == "pass"));
}

#[test]
fn out_file_receives_the_report_stream() {
    let path = std::env::temp_dir().join("cyclofactor-test-out.jsonl");
    let _ = std::fs::remove_file(&path);
    let out = cyclofactor(&[
        "verify", "--family", "main", "--d", "3", "--r", "1", "--n", "5",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    assert_eq!(contents.lines().count(), 1);
    assert!(contents.contains("\"verdict\":\"pass\""));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn verbose_logs_skipped_instances() {
    let out = cyclofactor(&[
        "verify", "--family", "main", "--d", "3", "--r", "1", "--n-min", "3", "--n-max", "4",
        "--verbose",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("skip main d=3 r=1 n=3"), "stderr: {}", stderr);
    assert!(stderr.contains("skip main d=3 r=1 n=4"), "stderr: {}", stderr);
}

#[test]
fn classic_checks_run() {
    let out = cyclofactor(&["classic", "--check", "rv", "--n-min", "3", "--n-max", "13"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let ps: Vec<i64> = lines.iter().map(|v| v["p"].as_i64().unwrap()).collect();
    assert_eq!(ps, vec![3, 5, 7, 11, 13]);
    assert!(lines.iter().all(|v| v["ok"] == true));

    let out = cyclofactor(&["classic", "--check", "gz", "--n-max", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 4); // n = 3, 5, 7, 9
    assert!(lines.iter().all(|v| v["ok"] == true));
}

#[test]
fn identity_checks_run() {
    let out = cyclofactor(&["identity", "--check", "qbino", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_lines(&out).iter().all(|v| v["ok"] == true));

    let out = cyclofactor(&["identity", "--check", "products", "--n-max", "20"]);
    assert_eq!(out.status.code(), Some(0));

    let out = cyclofactor(&[
        "identity", "--check", "parametric", "--family", "param-main", "--d", "3", "--r", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let ns: Vec<i64> = lines.iter().map(|v| v["n"].as_i64().unwrap()).collect();
    assert_eq!(ns, vec![2, 5, 8]); // three smallest admissible
    assert!(lines.iter().all(|v| v["ok"] == true));
}

#[test]
fn parametric_family_directed_to_identity() {
    let out = cyclofactor(&["verify", "--family", "param-main", "--d", "3", "--r", "1", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("identity"), "stderr: {}", stderr);
}
