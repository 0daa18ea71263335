//! End-to-end command tests: exit-code contract, determinism of the
//! report stream, and format switching.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_explicit-pnt"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn tmpdir() -> PathBuf {
    let d = std::env::temp_dir().join("explicit_pnt_cli_test");
    std::fs::create_dir_all(&d).unwrap();
    d
}

/// stdout without `#`-prefixed header lines.
fn body(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn cube_bound_golden_and_deterministic() {
    let run = || {
        let out = bin().args(["cube-bound", "--k", "0.9359"]).output().unwrap();
        assert!(out.status.success());
        body(&out)
    };
    let first = run();
    assert_eq!(
        first,
        "A,c,k,m,y_star,loglog_n0\n\
         9.70000000000e0,5.75400000000e1,9.35900000000e-1,3,8.01270317016e14,3.32186071918e1"
    );
    assert_eq!(first, run(), "byte-identical reruns");
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        let out = bin()
            .args(["--threads", threads, "estermann", "--lo", "3", "--hi", "200000"])
            .output()
            .unwrap();
        assert!(out.status.success());
        body(&out)
    };
    assert_eq!(run("1"), run("2"));
}

#[test]
fn exit_one_on_counterexamples() {
    // the exact scan finds the known small-x counterexamples
    let out = bin()
        .args(["ramanujan-verify", "--lo", "102000", "--hi", "103000", "--exact"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let b = body(&out);
    assert!(b.contains("102653"), "witness missing from: {b}");
}

#[test]
fn exit_zero_on_clean_range() {
    let out = bin()
        .args(["ramanujan-verify", "--lo", "5500000", "--hi", "5600000", "--exact"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn exit_two_on_input_errors() {
    // empty zero table file
    let empty = tmpdir().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let out = bin()
        .args(["zero-stats", "--check", "window"])
        .arg("--file")
        .arg(&empty)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // unknown subcommand is a usage error
    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // missing required flag
    let out = bin().arg("cube-bound").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_stats_passes_on_bundled_table() {
    let out = bin()
        .args(["zero-stats", "--check", "all"])
        .arg("--zeros")
        .arg(data("zeros-100k.txt"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let b = body(&out);
    assert!(b.contains("count_bound") && b.contains("window_bound") && b.contains("inverse_square_sum"));
    assert!(!b.contains("false"), "some bound failed: {b}");
}

#[test]
fn json_format_parses() {
    let out = bin()
        .args(["--format", "json", "mpower-bound", "--m", "5", "--k", "0.9741"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&body(&out)).unwrap();
    let loglog = v["loglog_n0"].as_f64().unwrap();
    assert!((loglog - 27.8168).abs() < 0.01);
}

#[test]
fn checkpoints_round_trip() {
    let path = tmpdir().join("ckpt.csv");
    let out = bin()
        .args(["checkpoints", "--from", "1000", "--to", "11000", "--spacing", "100", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = bin().args(["checkpoints", "--load"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(body(&out).contains("101,1000,11000,168,1335"));
    // verify the stepping path accepts the persisted file
    let build = bin()
        .args(["checkpoints", "--from", "2000000", "--to", "6000000", "--spacing", "25", "--out"])
        .arg(tmpdir().join("fine.csv"))
        .output()
        .unwrap();
    assert!(build.status.success());
    let out = bin()
        .args(["ramanujan-verify", "--lo", "5500000", "--hi", "5750000", "--checkpoints"])
        .arg(tmpdir().join("fine.csv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(body(&out).contains("true"));
}

#[test]
fn config_file_sets_format() {
    let cfg = tmpdir().join("cfg.toml");
    std::fs::write(&cfg, "format = json\n").unwrap();
    let out = bin()
        .args(["--config"])
        .arg(&cfg)
        .args(["cramer"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(serde_json::from_str::<serde_json::Value>(&body(&out)).is_ok());
}

#[test]
fn erdos_small_range() {
    let out = bin().args(["erdos", "--lo", "10", "--hi", "100000"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let b = body(&out);
    let row = b.lines().nth(1).unwrap();
    assert!(row.starts_with("74993,0,0,"), "row: {row}");
}

#[test]
fn sieve_progression_rows() {
    let out = bin()
        .args(["sieve", "--x", "20", "--progression", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let b = body(&out);
    assert!(b.contains("pi,8"));
    assert!(b.contains("theta_4_0,0"), "{b}");
}
