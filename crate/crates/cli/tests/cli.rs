use std::process::{Command, Output};

const DIAG: &str = r#"{"kind":"normal_matrix","n":3,"entries":[[1,0],[0,0],[0,0],[0,0],[2,0],[0,0],[0,0],[0,0],[3,0]]}"#;
const JORDAN: &str = r#"{"kind":"normal_matrix","n":2,"entries":[[0,0],[1,0],[0,0],[0,0]]}"#;
const PROJ: &str = r#"{"kind":"function_algebra","points":["a","b","c"],"values":[[1,0],[0,0],[1,0]]}"#;

fn cstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cstar")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn spectrum_of_diagonal_matrix() {
    let out = cstar(&["spectrum", "--doc", DIAG]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "{1, 2, 3}");
}

#[test]
fn spectrum_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("diag.json");
    std::fs::write(&path, DIAG).unwrap();
    let out = cstar(&["spectrum", "--input", path.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["kind"], "spectrum");
    assert_eq!(record["points"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_flags_projection() {
    let out = cstar(&["classify", "--doc", PROJ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("projection: yes"), "{text}");
    assert!(text.contains("unitary: no"), "{text}");
    assert!(text.contains("spectrum: {0, 1}"), "{text}");
}

#[test]
fn verify_small_suite_passes() {
    let out = cstar(&["verify", "--max-size", "6", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("[PASS] naturality_tau"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn verify_records_have_the_report_shape() {
    let out = cstar(&["verify", "--max-size", "3", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        let keys: Vec<&String> = record.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["defect", "instance", "law", "pass"]);
    }
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["verify", "--max-size", "4", "--seed", "7", "--format", "structured"];
    let (a, b) = (cstar(&args), cstar(&args));
    assert_eq!(a.stdout, b.stdout);
    let other = cstar(&["verify", "--max-size", "4", "--seed", "8", "--format", "structured"]);
    assert_eq!(other.status.code(), Some(0));
}

#[test]
fn non_normal_matrix_is_invalid_input() {
    let out = cstar(&["spectrum", "--doc", JORDAN]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not normal"));
}

#[test]
fn malformed_input_and_bad_flags_exit_2() {
    assert_eq!(cstar(&["spectrum", "--doc", "{\"kind\":\"nope\"}"]).status.code(), Some(2));
    assert_eq!(cstar(&["spectrum"]).status.code(), Some(2));
    assert_eq!(cstar(&["spectrum", "--doc", DIAG, "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(cstar(&["verify", "--max-size", "0"]).status.code(), Some(2));
    assert_eq!(cstar(&["quotient", "--doc", PROJ, "--zero-set", "zz"]).status.code(), Some(2));
}

#[test]
fn calculus_squares_the_spectrum() {
    let out = cstar(&["calculus", "--doc", DIAG, "--poly", "0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("spectrum: {1, 4, 9}"));
    let out = cstar(&["calculus", "--doc", PROJ, "--function", "inv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quotient_restricts_to_the_closed_set() {
    let out = cstar(&["quotient", "--doc", DIAG, "--zero-set", "lambda0,lambda2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dimension 2"), "{text}");
    assert!(text.contains("quotient norm 3"), "{text}");
}

#[test]
fn characters_are_point_evaluations() {
    let out = cstar(&["characters", "--doc", PROJ]);
    assert_eq!(stdout(&out), "phi0 (at a): 1\nphi1 (at b): 0\nphi2 (at c): 1\n");
}
