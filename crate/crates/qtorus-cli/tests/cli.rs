//! End-to-end tests of the qtorus binary: exit codes, report contents, and
//! JSON round-trips of the exported types.

use std::io::Write;
use std::process::{Command, Stdio};

use qtorus_cli::formats::{
    ClassifyReport, IntertwineReport, NormalFormReport, PiDegreeReport, ProblemInstance,
    ScalarSpec, VerifyReport,
};

fn run(args: &[&str], stdin_data: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qtorus"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().expect("stdin open").write_all(stdin_data.as_bytes()).expect("stdin write");
    let out = child.wait_with_output().expect("binary exits");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

/// Serializing a parsed report and parsing it again gives the same value.
fn roundtrip<T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug>(
    json: &str,
) -> T {
    let report: T = serde_json::from_str(json).expect("report parses");
    let re: T = serde_json::from_str(&serde_json::to_string(&report).expect("serializes"))
        .expect("reparses");
    assert_eq!(re, report);
    report
}

const RUNNING: &str = r#"{"m":4,"H":[[0,2,1],[-2,0,3],[-1,-3,0]]}"#;

#[test]
fn pi_degree_with_cross_check() {
    let (code, out, _) = run(&["pi-degree", "--json"], r#"{"m":6,"H":[[0,4],[-4,0]]}"#);
    assert_eq!(code, 0);
    let report: PiDegreeReport = roundtrip(&out);
    assert_eq!(report.pi_degree, 3);
    assert_eq!(report.brute_force_image, Some(9));
}

#[test]
fn pi_degree_skips_enumeration_when_large() {
    let (code, out, _) = run(&["pi-degree", "--json"], r#"{"m":12,"H":[[0,1],[-1,0]]}"#);
    assert_eq!(code, 0);
    let report: PiDegreeReport = roundtrip(&out);
    assert_eq!(report.pi_degree, 12);
    assert_eq!(report.brute_force_image, None);
}

#[test]
fn normal_form_of_zero_matrix() {
    let (code, out, _) = run(&["normal-form", "--json"], r#"{"m":5,"H":[[0,0,0],[0,0,0],[0,0,0]]}"#);
    assert_eq!(code, 0);
    let report: NormalFormReport = roundtrip(&out);
    assert_eq!(report.s, 0);
    assert_eq!(report.crank, 3);
    assert_eq!(report.pi_degree, 1);
    assert!(report.d.is_empty());
}

#[test]
fn normal_form_of_running_instance() {
    let (code, out, _) = run(&["normal-form", "--json"], RUNNING);
    assert_eq!(code, 0);
    let report: NormalFormReport = roundtrip(&out);
    assert_eq!((report.s, report.crank), (1, 1));
    assert_eq!(report.d, vec![1]);
    assert_eq!(report.k, vec![4]);
    assert_eq!(report.pi_degree, 4);
    assert_eq!(report.u.len(), 3);
}

#[test]
fn malformed_json_exits_2() {
    let (code, _, err) = run(&["pi-degree"], r#"{"m":6,"H":[[0,4"#);
    assert_eq!(code, 2);
    assert!(err.contains("parse error"), "stderr: {err}");
    assert!(err.contains("line"), "stderr should locate the error: {err}");
}

#[test]
fn unknown_field_exits_2() {
    let (code, _, err) = run(&["pi-degree"], r#"{"m":6,"H":[[0,4],[-4,0]],"beta2":[]}"#);
    assert_eq!(code, 2);
    assert!(err.contains("parse error"), "stderr: {err}");
}

#[test]
fn non_antisymmetric_exits_3() {
    let (code, _, err) = run(&["pi-degree"], r#"{"m":6,"H":[[0,4],[4,0]]}"#);
    assert_eq!(code, 3);
    assert!(err.contains("antisymmetric"), "stderr: {err}");
}

#[test]
fn mixed_parameter_kinds_exit_3() {
    let (code, _, err) = run(
        &["build"],
        r#"{"m":4,"H":[[0,1],[-1,0]],"alpha":["sym",{"num":2}]}"#,
    );
    assert_eq!(code, 3);
    assert!(err.contains("mixes"), "stderr: {err}");
}

#[test]
fn build_reduces_zero_support() {
    let (code, out, _) = run(
        &["build", "--json"],
        r#"{"m":4,"H":[[0,2,1],[-2,0,3],[-1,-3,0]],"alpha":[{"num":2},{"num":0},{"num":5,"den":3,"qexp":1}]}"#,
    );
    assert_eq!(code, 0);
    let report: qtorus_cli::formats::BuildReport = roundtrip(&out);
    assert_eq!(report.dim, 4);
    assert_eq!(report.kept, Some(vec![0, 2]));
    assert!(report.notice.expect("notice").contains("dropped 1 generator"));
    assert_eq!(report.normal.len(), 2);
    // Monomial matrices: one entry per row.
    for m in report.normal.iter().chain(&report.original) {
        assert_eq!(m.entries.len(), report.dim);
    }
}

#[test]
fn build_symbolic_by_default() {
    let (code, out, _) = run(&["build", "--json", "--dense"], RUNNING);
    assert_eq!(code, 0);
    let report: qtorus_cli::formats::BuildReport = roundtrip(&out);
    assert_eq!(report.dim, 4);
    assert_eq!(report.normal.len(), 3);
    assert!(report.normal[0].dense.is_some());
    assert!(report.notice.is_none());
}

#[test]
fn dense_output_is_capped() {
    let (code, _, err) = run(&["build", "--dense"], r#"{"m":65,"H":[[0,1],[-1,0]]}"#);
    assert_eq!(code, 3);
    assert!(err.contains("capped"), "stderr: {err}");
}

#[test]
fn verify_running_instance_passes() {
    let (code, out, _) = run(&["verify", "--json", "--trials", "5"], RUNNING);
    assert_eq!(code, 0);
    let report: VerifyReport = roundtrip(&out);
    assert!(report.ok);
    assert_eq!(report.dim, 4);
    assert_eq!(report.pi_degree, 4);
    assert_eq!(report.relations.checked, 6);
    assert!(report.relations.failures.is_empty());
    assert!(report.simplicity.holds);
    assert_eq!(report.generation.failures, 0);
    assert_eq!(report.generation.prime, 5);
}

#[test]
fn verify_rejects_prime_without_root() {
    // 7 - 1 = 6 is not divisible by m = 4, so GF(7) has no element of order 4.
    let (code, _, err) = run(&["verify", "--prime", "7"], RUNNING);
    assert_eq!(code, 3);
    assert!(err.contains("no element of order") || err.contains("order"), "stderr: {err}");
}

#[test]
fn classify_recovers_planted_witness() {
    let input = r#"{"m":4,"H":[[0,2,1],[-2,0,3],[-1,-3,0]],
        "alpha":[{"num":2},{"num":3},{"num":5}],
        "beta":[{"num":2,"qexp":1},{"num":3,"qexp":-2},{"num":5}]}"#;
    let (code, out, _) = run(&["classify", "--json"], input);
    assert_eq!(code, 0);
    let report: ClassifyReport = roundtrip(&out);
    assert!(report.isomorphic);
    assert_eq!(report.r, Some(vec![2]));
    assert_eq!(report.scale.expect("scale").len(), 1);
}

#[test]
fn classify_refuses_corrupted_pair() {
    let input = r#"{"m":4,"H":[[0,1],[-1,0]],
        "alpha":[{"num":2},{"num":3}],
        "beta":[{"num":1},{"num":3}]}"#;
    let (code, out, _) = run(&["classify", "--json"], input);
    assert_eq!(code, 0);
    let report: ClassifyReport = roundtrip(&out);
    assert!(!report.isomorphic);
    assert!(report.reason.is_some());
}

#[test]
fn classify_distinguishes_supports() {
    let input = r#"{"m":4,"H":[[0,1],[-1,0]],
        "alpha":[{"num":0},{"num":3}],
        "beta":[{"num":2},{"num":0}]}"#;
    let (code, out, _) = run(&["classify", "--json"], input);
    assert_eq!(code, 0);
    let report: ClassifyReport = roundtrip(&out);
    assert!(!report.isomorphic);
    assert!(report.reason.expect("reason").contains("supports differ"));
}

#[test]
fn classify_requires_numeric_values() {
    let input = r#"{"m":4,"H":[[0,1],[-1,0]],"alpha":["sym","sym"],"beta":[{"num":1},{"num":1}]}"#;
    let (code, _, err) = run(&["classify"], input);
    assert_eq!(code, 3);
    assert!(err.contains("symbolic"), "stderr: {err}");
}

#[test]
fn classify_requires_beta() {
    let input = r#"{"m":4,"H":[[0,1],[-1,0]],"alpha":[{"num":1},{"num":1}]}"#;
    let (code, _, err) = run(&["classify"], input);
    assert_eq!(code, 3);
    assert!(err.contains("beta"), "stderr: {err}");
}

#[test]
fn intertwine_builds_verified_map() {
    let input = r#"{"m":4,"H":[[0,2,1],[-2,0,3],[-1,-3,0]],
        "alpha":[{"num":2},{"num":3},{"num":5}],
        "beta":[{"num":2,"qexp":1},{"num":3,"qexp":-2},{"num":5}]}"#;
    let (code, out, _) = run(&["intertwine", "--json"], input);
    assert_eq!(code, 0);
    let report: IntertwineReport = roundtrip(&out);
    assert_eq!(report.r, vec![2]);
    assert_eq!(report.matrix.dim, 4);
    assert_eq!(report.matrix.entries.len(), 4);
}

#[test]
fn intertwine_fails_on_non_isomorphic_pair() {
    let input = r#"{"m":4,"H":[[0,1],[-1,0]],
        "alpha":[{"num":2},{"num":3}],
        "beta":[{"num":1},{"num":3}]}"#;
    let (code, out, err) = run(&["intertwine", "--json"], input);
    assert_eq!(code, 1);
    let report: ClassifyReport = roundtrip(&out);
    assert!(!report.isomorphic);
    assert!(err.contains("not isomorphic"), "stderr: {err}");
}

#[test]
fn selftest_passes() {
    let (code, out, _) = run(&["selftest"], "");
    assert_eq!(code, 0);
    assert!(out.contains("selftest: 7 passed, 0 failed"), "stdout: {out}");
}

#[test]
fn selftest_json_mode() {
    let (code, out, _) = run(&["selftest", "--json"], "");
    assert_eq!(code, 0);
    let report: qtorus_cli::formats::SelftestReport = roundtrip(&out);
    assert_eq!(report.failed, 0);
    assert_eq!(report.passed as usize, report.cases.len());
}

#[test]
fn instance_json_roundtrip() {
    let inst = ProblemInstance {
        m: 4,
        h: vec![vec![0, 2], vec![-2, 0]],
        alpha: Some(vec![
            ScalarSpec::Sym(String::from("sym")),
            ScalarSpec::Sym(String::from("sym")),
        ]),
        beta: None,
    };
    let text = serde_json::to_string(&inst).expect("serializes");
    let back: ProblemInstance = serde_json::from_str(&text).expect("parses");
    assert_eq!(back, inst);

    // Spec defaults fill in den = 1 and qexp = 0.
    let filled: ProblemInstance =
        serde_json::from_str(r#"{"m":4,"H":[[0,2],[-2,0]],"alpha":[{"num":3},{"num":1}]}"#)
            .expect("parses");
    assert_eq!(
        filled.alpha,
        Some(vec![
            ScalarSpec::Num { num: 3, den: 1, qexp: 0 },
            ScalarSpec::Num { num: 1, den: 1, qexp: 0 }
        ])
    );
}

#[test]
fn reads_input_from_file() {
    let dir = std::env::temp_dir();
    let path = dir.join("qtorus-cli-test-instance.json");
    std::fs::write(&path, r#"{"m":6,"H":[[0,4],[-4,0]]}"#).expect("write temp file");
    let (code, out, _) = run(&["pi-degree", "--json", path.to_str().expect("utf-8 path")], "");
    assert_eq!(code, 0);
    let report: PiDegreeReport = roundtrip(&out);
    assert_eq!(report.pi_degree, 3);
    std::fs::remove_file(&path).ok();
}

#[test]
fn missing_file_exits_2() {
    let (code, _, err) = run(&["pi-degree", "/nonexistent/qtorus-input.json"], "");
    assert_eq!(code, 2);
    assert!(err.contains("input error"), "stderr: {err}");
}
