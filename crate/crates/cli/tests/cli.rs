//! End-to-end runs of the `fusion-orbit` binary: exit codes, schema
//! conformance and byte-stable output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fusion-orbit"));
    cmd.env_remove("FUSION_ORBIT_CACHE");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).parent().unwrap().parent().unwrap().to_path_buf()
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(workspace_root().join("docs/report.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

/// Runs, checks the exit code and validates stdout against the schema.
fn json(args: &[&str], code: i32) -> Value {
    let out = run(args);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {stderr}");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    let errors: Vec<String> = validator().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    v
}

fn dims(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn every_subcommand_conforms_to_the_schema() {
    json(&["limits", "--group", "S4", "--p", "2", "--collection", "centric", "--n", "3", "--i", "2"], 0);
    json(&["stable", "--group", "A4", "--p", "2", "--n", "3"], 0);
    json(&["classify", "--group", "D8", "--p", "2"], 0);
    json(&["saturate-check", "--group", "A5", "--p", "2"], 0);
    json(&["centralizer-row", "--group", "S4", "--p", "2", "--n", "2"], 0);
    json(&["normalizer-row", "--group", "S3", "--p", "3", "--n", "2"], 0);
    json(&["verify", "reduction", "--group", "S4", "--p", "2"], 0);
    json(&["example", "c3-semidirect-z", "--n", "4"], 0);
}

#[test]
fn limits_on_s3_follow_the_stable_element_pattern() {
    let v = json(&["limits", "--group", "S3", "--p", "3", "--n", "8", "--i", "2"], 0);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 9);
    for (n, r) in reports.iter().enumerate() {
        let expected = u64::from(matches!(n % 4, 0 | 3));
        assert_eq!(dims(&r["dims"]), vec![expected, 0, 0], "n = {n}");
    }
}

#[test]
fn comparison_theorems_pass() {
    let v = json(&["verify", "thesame", "--group", "S4", "--p", "2", "--collection", "centric"], 0);
    assert_eq!(v["theorem"], "projection-iso");
    assert_eq!(v["verdict"], "pass");
    let v = json(&["verify", "norm-sharp", "--group", "S4", "--p", "2", "--n", "2", "--i", "2"], 0);
    assert_eq!(v["theorem"], "normalizer-sharpness");
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn unmet_hypotheses_exit_with_one() {
    // elementary abelian subgroups of D8 are not closed under overgroups
    let v = json(&["verify", "reduction", "--group", "D8", "--p", "2", "--collection", "elementary-abelian", "--n", "1"], 1);
    assert_ne!(v["verdict"], "pass");
}

#[test]
fn usage_errors_exit_with_two() {
    let out = run(&["limits", "--group", "S4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    for args in [
        &["limits", "--group", "S4", "--p", "2", "--collection", "nonsense"][..],
        &["limits", "--group", "S4", "--p", "2", "--n", "1000"],
        &["limits", "--group", "S4", "--p", "4"],
        &["classify", "--group", "S4", "--p", "7"],
        &["classify", "--group", "X9", "--p", "2"],
        &["limits", "--group", "S4", "--p", "2", "--collection", "explicit:(1,2,3)"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn group_files_match_builtins() {
    let dir = TempDir::new().unwrap();
    let good = dir.path().join("s4.json");
    std::fs::write(&good, r#"{"name": "S4", "degree": 4, "generators": [[2, 3, 4, 1], [2, 1, 3, 4]]}"#).unwrap();
    let from_file = json(&["normalizer-row", "--group", good.to_str().unwrap(), "--p", "2", "--n", "2"], 0);
    let builtin = json(&["normalizer-row", "--group", "S4", "--p", "2", "--n", "2"], 0);
    let rows = |v: &Value| v["reports"].as_array().unwrap().iter().map(|r| dims(&r["dims"])).collect::<Vec<_>>();
    assert_eq!(rows(&from_file), rows(&builtin));

    let bad = dir.path().join("bad.json");
    for text in [r#"{"name": "X", "degree": 3, "generators": [[1, 1, 2]]}"#, r#"{"name": "X", "degree": 3"#, r#"{"name": "X", "degree": 3, "generators": [], "extra": 1}"#] {
        std::fs::write(&bad, text).unwrap();
        let out = run(&["classify", "--group", bad.to_str().unwrap(), "--p", "2"]);
        assert_eq!(out.status.code(), Some(2), "{text}");
    }
}

#[test]
fn output_is_byte_identical_across_runs_and_cache_states() {
    let args = ["limits", "--group", "A4", "--p", "2", "--collection", "all-p", "--n", "3"];
    let first = run(&args);
    assert!(first.status.success());
    assert_eq!(run(&args).stdout, first.stdout);
    assert_eq!(run(&[&args[..], &["--mode", "sequential"]].concat()).stdout, first.stdout);

    let cache = TempDir::new().unwrap();
    let cold = bin().args(args).env("FUSION_ORBIT_CACHE", cache.path()).output().unwrap();
    assert!(std::fs::read_dir(cache.path()).unwrap().count() > 0, "records written");
    let warm = bin().args(args).env("FUSION_ORBIT_CACHE", cache.path()).output().unwrap();
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(warm.stdout, first.stdout);
}

#[test]
fn config_file_sets_defaults_and_flags_win() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("fusion-orbit.toml");
    let cache = dir.path().join("store");
    std::fs::write(&cfg, format!("format = \"text-table\"\nmax_degree = 4\ncache_dir = {:?}\n", cache.to_str().unwrap())).unwrap();
    let cfg = cfg.to_str().unwrap();

    let out = run(&["stable", "--group", "S3", "--p", "3", "--n", "4", "--config", cfg]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("dim H^n("), "{text}");
    assert!(cache.is_dir());

    let out = run(&["stable", "--group", "S3", "--p", "3", "--n", "4", "--config", cfg, "--format", "json"]);
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());

    assert_eq!(run(&["stable", "--group", "S3", "--p", "3", "--n", "5", "--config", cfg]).status.code(), Some(2));
}

#[test]
fn text_table_has_degree_columns() {
    let out = run(&["limits", "--group", "S3", "--p", "3", "--n", "3", "--i", "1", "--format", "text-table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[1].starts_with("n \\ i"), "{text}");
    assert_eq!(lines.len(), 2 + 4);
}

#[test]
fn schema_rejects_malformed_reports() {
    let v = validator();
    assert!(v.is_valid(&serde_json::json!({ "schema_version": 1 })));
    let mut good = json(&["stable", "--group", "S3", "--p", "3", "--n", "2"], 0);
    assert!(v.is_valid(&good));
    good["schema_version"] = 2.into();
    assert!(!v.is_valid(&good));
    let mut verify = json(&["verify", "norm-sharp", "--group", "S3", "--p", "3", "--n", "1"], 0);
    verify["verdict"] = "maybe".into();
    assert!(!v.is_valid(&verify));
    assert!(!v.is_valid(&serde_json::json!({ "schema_version": 1, "kind": "limits" })));
}
