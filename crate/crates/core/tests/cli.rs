use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs").join(name)
}

fn petit(args: &[&str], config: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_petit"))
        .args(args)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn inspect_writes_report_with_hash_and_version() {
    let dir = tempfile::tempdir().unwrap();
    let out = petit(&["inspect"], &config("inert.json"), dir.path());
    assert_eq!(out.status.code(), Some(0));
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.contains("field of 9"), "{summary}");
    let report = read_json(&dir.path().join("inspect.json"));
    let text = std::fs::read_to_string(config("inert.json")).unwrap();
    assert_eq!(report["meta"]["config_sha256"], petit_lattice::pipeline::config_hash(&text));
    assert_eq!(report["meta"]["library_version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn missing_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = petit(&["codes"], &dir.path().join("absent.json"), dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["exit_code"], 2);
}

#[test]
fn unknown_field_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"order": "gaussian", "f": [[0, -1], [0, 0], [1, 0]], "prime": 3, "colour": 1}"#).unwrap();
    let out = petit(&["inspect"], &path, &dir.path().join("out"));
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn oversized_enumeration_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = petit(&["codes"], &config("stbc_quaternion.json"), dir.path());
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "TooLarge");
}

#[test]
fn violated_dual_hypothesis_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = petit(&["dual"], &config("dual_violation.json"), dir.path());
    assert_eq!(out.status.code(), Some(4));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["hypothesis"]["which"], "(ii)");
    assert_eq!(err["hypothesis"]["index"], 1);
}

#[test]
fn float_export_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(petit(&["lattice"], &config("split.json"), dir.path()).status.code(), Some(0));
    assert!(!dir.path().join("lattice_float.json").exists());
    assert_eq!(petit(&["lattice", "--float-export"], &config("split.json"), dir.path()).status.code(), Some(0));
    assert!(dir.path().join("lattice_float.json").exists());
}

#[test]
fn seed_changes_sampled_output_only() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = |seed: &'static str| ["stbc", "--trials", "50", "--seed", seed];
    assert_eq!(petit(&args("1"), &config("stbc_gaussian.json"), a.path()).status.code(), Some(0));
    assert_eq!(petit(&args("2"), &config("stbc_gaussian.json"), b.path()).status.code(), Some(0));
    let (ra, rb) = (read_json(&a.path().join("stbc.json")), read_json(&b.path().join("stbc.json")));
    assert_ne!(ra["matrices"], rb["matrices"]);
    assert_eq!(ra["meta"]["config_sha256"], rb["meta"]["config_sha256"]);
    assert_eq!(ra["diversity"]["singular"], 0);
}
