use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn tpsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpsa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn validate_passes_on_shipped_fixtures() {
    for name in ["f1.json", "f2.json", "f3.json", "f3p.json", "trivial_global.json"] {
        let out = tpsa(&["validate", fixture(name).to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let rep: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(rep["check_id"], "AX-1.1");
        assert_eq!(rep["status"], "pass");
        assert_eq!(rep["schema_version"], 1);
    }
}

#[test]
fn parse_and_schema_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ nope").unwrap();
    let out = tpsa(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));

    std::fs::write(&bad, r#"{"name":"x","presentation":"finite_support",
        "ring":{"factors":[{"kind":"cyclic","modulus":0}]}}"#)
        .unwrap();
    let out = tpsa(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema error"));
}

#[test]
fn unknown_and_incompatible_checks_exit_2() {
    let f3 = fixture("f3.json");
    let out = tpsa(&["verify", "NOPE-1.1", f3.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let out = tpsa(&["verify", "MORITA-3.6", f3.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("incompatible"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&tpsa(&["frobnicate"])), 2);
    assert_eq!(code(&tpsa(&["verify"])), 2);
}

#[test]
fn single_check_reports_json() {
    let out = tpsa(&["verify", "PRIME-2.4a", fixture("f3.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let rep: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["check_id"], "PRIME-2.4a");
    assert_eq!(rep["fixture"], "swap2");
    assert_eq!(rep["status"], "pass");
}

#[test]
fn verify_all_is_byte_identical_across_runs() {
    let f3 = fixture("f3.json");
    let a = tpsa(&["verify", "all", f3.to_str().unwrap(), "--seed", "7"]);
    let b = tpsa(&["verify", "all", f3.to_str().unwrap(), "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "verify all must be deterministic");
    let rep: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(rep["mode"], "verify-all");
    assert_eq!(rep["summary"]["fail"], 0);
    assert!(rep["summary"]["pass"].as_u64().unwrap() > 10);
    assert_eq!(rep["params"]["seed"], 7);
}

#[test]
fn radicals_primes_rank_run_on_f3() {
    let f3 = fixture("f3.json");
    for (args, check_id) in [
        (vec!["radicals", f3.to_str().unwrap()], "radicals"),
        (vec!["primes", f3.to_str().unwrap(), "--ring", "laurent"], "primes"),
        (vec!["rank", f3.to_str().unwrap()], "rank"),
    ] {
        let out = tpsa(&args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let rep: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(rep["check_id"], check_id);
    }
}

#[test]
fn json_out_duplicates_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = tpsa(&[
        "validate",
        fixture("f1.json").to_str().unwrap(),
        "--json-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
}

#[test]
fn cache_rerun_matches_no_cache_run() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let f3 = fixture("f3.json");
    let args = ["verify", "all", f3.to_str().unwrap()];
    let cold = tpsa(&[&args[..], &["--cache-dir", cache.to_str().unwrap()]].concat());
    let warm = tpsa(&[&args[..], &["--cache-dir", cache.to_str().unwrap()]].concat());
    let none = tpsa(&[&args[..], &["--no-cache"]].concat());
    assert_eq!(code(&cold), 0);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, none.stdout);
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0, "cache populated");
}

#[test]
fn search_budget_exhaustion_exits_3() {
    let out = tpsa(&["search", "OQ-2.16i", "--budget", "1"]);
    assert_eq!(code(&out), 3);
    let rep: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["budget_exceeded"], true);
    assert_eq!(rep["status"], "reported");
}

#[test]
fn search_reports_are_never_asserted() {
    let out = tpsa(&["search", "OQ-2.5", "--budget", "10"]);
    assert_eq!(code(&out), 0);
    let rep: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["status"], "reported");
    for item in rep["items"].as_array().unwrap() {
        assert_eq!(item["status"], "reported");
    }
}
