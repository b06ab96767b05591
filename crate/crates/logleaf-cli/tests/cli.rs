//! End-to-end checks of the command-line contract: exit codes, report
//! determinism, stdin input, and strict mode.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_logleaf"))
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

const PENCIL: &str = r#"{
    "ambient": {"type": "projective", "dim": 3},
    "basis": {"symbols": ["1"]},
    "components": [
        {"name": "F0", "degree": 3, "residue": {"1": "1"}},
        {"name": "F1", "degree": 3, "residue": {"1": "-1"}}
    ]
}"#;

const TRIANGLE_WITH_POLYS: &str = r#"{
    "ambient": {"type": "projective", "dim": 2},
    "basis": {"symbols": ["1"], "numeric": {"1": 1.0}},
    "components": [
        {"name": "x", "degree": 1, "residue": {"1": "1"},
         "polynomial": {"terms": [{"coeff": 1.0, "exponents": [1, 0, 0]}]}},
        {"name": "y", "degree": 1, "residue": {"1": "1"},
         "polynomial": {"terms": [{"coeff": 1.0, "exponents": [0, 1, 0]}]}},
        {"name": "z", "degree": 1, "residue": {"1": "-2"},
         "polynomial": {"terms": [{"coeff": 1.0, "exponents": [0, 0, 1]}]}}
    ]
}"#;

#[test]
fn leaf_pi_happy_path() {
    let path = tmp("pencil.json", PENCIL);
    let out = run(&["leaf-pi", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("Z/3"), "{stdout}");
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let path = tmp("pencil_det.json", PENCIL);
    let args = ["leaf-pi", path.to_str().unwrap(), "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(parsed["results"]["torsion"][0], "3");
    assert_eq!(parsed["command"], "leaf-pi");
    assert!(parsed["input_digest"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));
}

#[test]
fn reads_from_stdin() {
    let mut child = bin()
        .args(["complement-pi", "-", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(PENCIL.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // Z + Z/3
    assert_eq!(parsed["results"]["free_rank"], 1);
    assert_eq!(parsed["results"]["torsion"][0], "3");
}

#[test]
fn malformed_input_exits_1() {
    let path = tmp("broken.json", "{ this is not json");
    let out = run(&["leaf-pi", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));
}

#[test]
fn validation_error_exits_1_with_field_path() {
    let bad = PENCIL.replace("\"degree\": 3", "\"degree\": 0");
    let path = tmp("zero_degree.json", &bad);
    let out = run(&["leaf-pi", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("components[0].degree"), "{stderr}");
}

#[test]
fn strict_mode_turns_residue_warning_into_exit_1() {
    let unbalanced = r#"{
        "ambient": {"type": "projective", "dim": 3},
        "basis": {"symbols": ["1"]},
        "components": [
            {"degree": 1, "residue": {"1": "1"}},
            {"degree": 1, "residue": {"1": "1"}},
            {"degree": 1, "residue": {"1": "-1"}}
        ]
    }"#;
    let path = tmp("unbalanced_strict.json", unbalanced);
    // non-strict: the complement group is still computable, warning attached
    let out = run(&["complement-pi", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!parsed["warnings"].as_array().unwrap().is_empty());
    // strict: refuse the document
    let out = run(&["complement-pi", path.to_str().unwrap(), "--strict"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn computation_errors_exit_2() {
    // hyperplane sections need n >= 2
    let low = PENCIL.replace("\"dim\": 3", "\"dim\": 2");
    let path = tmp("low_dim.json", &low);
    let out = run(&["hyperplane-section", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ambient dimension at least 3"));

    // complement group is not computed on complete intersections
    let ci = r#"{
        "ambient": {"type": "complete-intersection", "space_dim": 6, "multidegrees": [2], "dim": 4},
        "basis": {"symbols": ["1", "a"]},
        "components": [
            {"degree": 1, "residue": {"1": "1"}},
            {"degree": 1, "residue": {"a": "1"}},
            {"degree": 1, "residue": {"1": "-1", "a": "-1"}}
        ]
    }"#;
    let path = tmp("ci.json", ci);
    let out = run(&["complement-pi", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // but the connectivity report works there
    let out = run(&["connectivity", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(parsed["results"]["pi1_leaf"].is_null());
    assert_eq!(parsed["results"]["higher"][0]["status"], "zero");
}

#[test]
fn oracle_failure_exits_3() {
    let path = tmp("triangle.json", TRIANGLE_WITH_POLYS);
    // quadrature noise sits around 1e-14; an absurd tolerance must trip
    let out = run(&[
        "verify-periods",
        path.to_str().unwrap(),
        "--tolerance",
        "1e-18",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tolerance"));
}

#[test]
fn verify_periods_without_polynomials_exits_1() {
    let path = tmp("pencil_no_polys.json", PENCIL);
    let out = run(&["verify-periods", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("polynomial"));
}

#[test]
fn verify_periods_happy_path_reports_meridians() {
    let path = tmp("triangle_ok.json", TRIANGLE_WITH_POLYS);
    let out = run(&[
        "verify-periods",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let meridians = parsed["results"]["meridians"].as_array().unwrap();
    assert_eq!(meridians.len(), 3);
    assert!(meridians.iter().all(|m| m["passed"] == true));
    assert_eq!(parsed["results"]["residue_constraint"]["satisfied"], true);
}

#[test]
fn connectivity_headline_for_nonresonant_arrangement() {
    let sqrt2 = r#"{
        "ambient": {"type": "projective", "dim": 3},
        "basis": {"symbols": ["1", "sqrt2"]},
        "components": [
            {"degree": 1, "residue": {"1": "1"}},
            {"degree": 1, "residue": {"sqrt2": "1"}},
            {"degree": 1, "residue": {"1": "-1", "sqrt2": "-1"}}
        ]
    }"#;
    let path = tmp("sqrt2_p3.json", sqrt2);
    let out = run(&["connectivity", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["results"]["headline"], "(n-1)-connected");
    assert_eq!(parsed["results"]["pi1_leaf"]["pretty"], "0");
    assert_eq!(parsed["assumptions"].as_array().unwrap().len(), 4);
}

#[test]
fn resonance_attaches_numeric_scan_when_values_exist() {
    let with_numeric = r#"{
        "ambient": {"type": "projective", "dim": 4},
        "basis": {"symbols": ["1"], "numeric": {"1": 1.0}},
        "components": [
            {"degree": 1, "residue": {"1": "1"}},
            {"degree": 1, "residue": {"1": "1"}},
            {"degree": 1, "residue": {"1": "-2"}}
        ]
    }"#;
    let path = tmp("resonant_numeric.json", with_numeric);
    let out = run(&[
        "resonance",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--height-bound",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["results"]["status"], "resonant");
    let scan = &parsed["results"]["numeric_scan"];
    assert_eq!(scan["heuristic"], true);
    assert_eq!(scan["height_bound"], 50);
    let vectors: Vec<Vec<String>> = scan["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            c["vector"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_str().unwrap().to_string())
                .collect()
        })
        .collect();
    assert!(vectors.contains(&vec!["1".into(), "-1".into(), "0".into()]), "{vectors:?}");

    // without numeric values the scan is absent
    let plain = with_numeric.replace(r#", "numeric": {"1": 1.0}"#, "");
    let path = tmp("resonant_plain.json", &plain);
    let out = run(&["resonance", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(parsed["results"]["numeric_scan"].is_null());
}

#[test]
fn full_on_complete_intersection_skips_unsupported_sections() {
    let ci = r#"{
        "ambient": {"type": "complete-intersection", "space_dim": 7, "multidegrees": [2, 3], "dim": 5},
        "basis": {"symbols": ["1", "a"]},
        "components": [
            {"degree": 1, "residue": {"1": "1"}},
            {"degree": 1, "residue": {"a": "1"}},
            {"degree": 1, "residue": {"1": "-1", "a": "-1"}}
        ]
    }"#;
    let path = tmp("ci_full.json", ci);
    let out = run(&["full", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = &parsed["results"];
    assert!(results["complement_pi1"].is_null());
    assert!(results["leaf_pi1"].is_null());
    assert!(results["connectivity"]["pi1_leaf"].is_null());
    // n = 4: levels 2 and 3 vanish
    let higher = results["connectivity"]["higher"].as_array().unwrap();
    assert_eq!(higher.len(), 2);
    assert!(higher.iter().all(|h| h["status"] == "zero"));
    assert!(results["skipped"].as_array().unwrap().len() >= 2);
}

#[test]
fn full_report_covers_all_sections() {
    let path = tmp("triangle_full.json", TRIANGLE_WITH_POLYS);
    let out = run(&["full", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = &parsed["results"];
    assert!(results["complement_pi1"].is_object());
    assert!(results["leaf_pi1"].is_object());
    assert!(results["resonance"].is_object());
    assert!(results["connectivity"].is_object());
    assert!(results["periods"].is_object());
    // n = 1 on P^2: the hyperplane section is skipped, not attempted
    assert!(results["hyperplane_section"].is_null());
    assert!(results["skipped"]
        .as_array()
        .unwrap()
        .iter()
        .any(|s| s.as_str().unwrap().contains("hyperplane-section")));
}
