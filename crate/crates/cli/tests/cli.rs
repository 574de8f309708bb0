//! End-to-end checks of the `cheeger` binary: JSON/CSV shapes, exit codes,
//! and byte-level determinism of `bench`.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cheeger(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cheeger"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn spectrum_emits_json() {
    let out = cheeger(&["spectrum", "--gen", "cycle(4)"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!((v["lambda1"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 4);
}

#[test]
fn exact_cheeger_petersen() {
    let out = cheeger(&["cheeger", "--exact", "--gen", "petersen"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!((v["h"]["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(v["h"]["provenance"]["kind"], "exact");
    assert_eq!(v["cut"]["boundary"], 5);
}

#[test]
fn sweep_arbitrary_reports_bound_term() {
    let out = cheeger(&[
        "sweep",
        "--gen",
        "cycle(4)",
        "--method",
        "arbitrary",
        "--coeffs",
        "1,1",
        "--trials",
        "16",
        "--seed",
        "5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!((v["bound_term"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(v["result"]["method"], "random_arbitrary_vector");
}

#[test]
fn bounds_reports_flags() {
    let out = cheeger(&["bounds", "--gen", "star(4)"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["classical_lower_ok"], true);
    assert_eq!(v["classical_upper_ok"], true);
    assert_eq!(v["linear_lower_ok"], true);
    assert_eq!(v["linear_upper_note"], "asymptotic, not asserted");
    assert!((v["h_value"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn bench_is_byte_deterministic() {
    let corpus = format!("{}/corpora/substitute.corpus", env!("CARGO_MANIFEST_DIR"));
    let run = || {
        let out = cheeger(&["bench", "--corpus", &corpus, "--mode", "n-1", "--seed", "7"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn bench_file_entry_and_partial_failure_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("p4.edges");
    fs::write(&good, "0 1\n1 2\n2 3\n").unwrap();
    let split = dir.path().join("split.edges");
    fs::write(&split, "0 1\n2 3\n").unwrap();
    let corpus_path = dir.path().join("mixed.corpus");
    fs::write(
        &corpus_path,
        format!(
            "p4\tfile:{}\nsplit\tfile:{}\n",
            good.display(),
            split.display()
        ),
    )
    .unwrap();
    let out_csv = dir.path().join("out.csv");
    let out = cheeger(&[
        "bench",
        "--corpus",
        corpus_path.to_str().unwrap(),
        "--mode",
        "n-1",
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "partial failure exit code");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("split"));
    assert!(stderr.contains("disconnected"));
    let csv = fs::read_to_string(&out_csv).unwrap();
    assert_eq!(csv.lines().count(), 2, "header + the good row only");
    assert!(csv.lines().nth(1).unwrap().starts_with("p4,4,"));
}

#[test]
fn usage_errors_exit_one() {
    // Unknown mode string.
    let corpus = format!("{}/corpora/substitute.corpus", env!("CARGO_MANIFEST_DIR"));
    let out = cheeger(&["bench", "--corpus", &corpus, "--mode", "n3"]);
    assert_eq!(out.status.code(), Some(1));

    // Missing graph input.
    let out = cheeger(&["spectrum"]);
    assert_eq!(out.status.code(), Some(1));

    // Empty corpus.
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.corpus");
    fs::write(&empty, "# nothing here\n").unwrap();
    let out = cheeger(&["bench", "--corpus", empty.to_str().unwrap(), "--mode", "n-1"]);
    assert_eq!(out.status.code(), Some(1));

    // Exact enumeration beyond the cap.
    let out = cheeger(&["cheeger", "--exact", "--gen", "cycle(30)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n <= 24"));
}

#[test]
fn workers_env_var_is_honored() {
    let corpus = format!("{}/corpora/substitute.corpus", env!("CARGO_MANIFEST_DIR"));
    let out = Command::new(env!("CARGO_BIN_EXE_cheeger"))
        .env("CHEEGER_WORKERS", "2")
        .args(["bench", "--corpus", &corpus, "--mode", "n-1", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    // Same bytes as an explicit worker count: concurrency never changes output.
    let explicit = cheeger(&[
        "bench", "--corpus", &corpus, "--mode", "n-1", "--seed", "7", "--workers", "1",
    ]);
    assert_eq!(out.stdout, explicit.stdout);
}

#[test]
fn edge_list_duplicate_warning_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.edges");
    fs::write(&path, "0 1\n1 0\n1 2\n").unwrap();
    let out = cheeger(&["spectrum", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("1 duplicate"));
    assert!(Path::new(&path).exists());
}
