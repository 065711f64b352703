//! The `frt` binary: exit codes and artifacts.

use std::process::Command;

use serde_json::Value;

fn frt(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_frt")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr),
    )
}

fn write_fixture_spec(dir: &std::path::Path, name: &str) -> (std::path::PathBuf, Value) {
    let spec = frt::pipeline::fixture(name).unwrap();
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, spec.to_json()).unwrap();
    (path, serde_json::from_str(&spec.to_json()).unwrap())
}

#[test]
fn flip_spec_file_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (spec, _) = write_fixture_spec(dir.path(), "flip");
    let report = dir.path().join("report.json");
    let pres = dir.path().join("pres.json");
    let (code, out) = frt(&[
        "build",
        spec.to_str().unwrap(),
        "--emit-report",
        report.to_str().unwrap(),
        "--emit-presentation",
        pres.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let r: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    let dims: Vec<u64> = r["hilbert"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 4, 10, 20]);
    assert_eq!(r["format_version"], 1);
    let p: Value = serde_json::from_str(&std::fs::read_to_string(pres).unwrap()).unwrap();
    assert_eq!(p["generators"].as_array().unwrap().len(), 4);
    assert_eq!(p["relations"].as_array().unwrap().len(), 12);
    // scalars are exact strings
    assert!(p["counit"][0]["value"][0].is_string());
}

#[test]
fn non_ybe_matrix_exits_1() {
    let (code, out) = frt(&["build", "--fixture", "flip-broken"]);
    assert_eq!(code, 1);
    assert!(out.contains("NotYangBaxter") && out.contains("residual"), "{out}");
}

#[test]
fn malformed_quadruple_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let (_, mut v) = write_fixture_spec(dir.path(), "flip");
    v["algebra"]["structure"][0] = serde_json::json!([0, 0, "one", "1"]);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let (code, out) = frt(&["build", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("line") && out.contains("column"), "{out}");
}

#[test]
fn bad_prime_and_dimension_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let (_, mut v) = write_fixture_spec(dir.path(), "flip");
    v["field"] = "Fp:9".into();
    let path = dir.path().join("p9.json");
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(frt(&["build", path.to_str().unwrap()]).0, 2);
    let (_, mut v) = write_fixture_spec(dir.path(), "flip");
    v["bimodule"]["dim"] = 3.into();
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(frt(&["build", path.to_str().unwrap()]).0, 2);
}

#[test]
fn flags_override_spec() {
    let (code, out) = frt(&["build", "--fixture", "q2", "--degree", "2", "--checks", "ybe,bialgebroid"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("hilbert: [1, 4, 10]"), "{out}");
    assert!(!out.contains("rform"), "{out}");
}

#[test]
fn unstable_hopf_exits_3() {
    let (code, out) = frt(&["build", "--fixture", "flip-hopf", "--horizon", "0", "--checks", "ybe"]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn finite_field_hopf_spec() {
    let dir = tempfile::tempdir().unwrap();
    let (_, mut v) = write_fixture_spec(dir.path(), "q2-hopf");
    v["field"] = "Fp:7".into();
    let path = dir.path().join("q2f7.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, out) = frt(&["build", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("hilbert: [1, 9, 38]"), "{out}");
}
