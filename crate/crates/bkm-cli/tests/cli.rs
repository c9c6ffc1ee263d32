//! End-to-end tests of the `bkm` binary: exit codes, determinism, verify
//! suites, and the result cache.

use std::process::{Command, Output};

const MATRIX_NEG_A2: &str = r#"{"A":[["-2","-1"],["-1","-2"]]}"#;
const LAMBDA_RHO: &str = r#"{"pairings":["-1","-1"]}"#;

fn bkm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bkm"))
        .args(args)
        .env_remove("BKM_CACHE_DIR")
        .output()
        .expect("binary runs")
}

#[test]
fn classify_valid_input_exits_zero() {
    let out = bkm(&["classify", "--matrix", MATRIX_NEG_A2]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Negative"), "{text}");
}

#[test]
fn malformed_matrix_exits_two() {
    let out = bkm(&["classify", "--matrix", r#"{"A":[["2","3"],["0","2"]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = bkm(&["classify", "--matrix", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unbounded_solve_without_box_exits_two() {
    // second node real: variant R needs an explicit search box
    let out = bkm(&[
        "solve",
        "--matrix",
        r#"{"A":[["-2","-2"],["-2","2"]]}"#,
        "--lambda",
        r#"{"pairings":["-1","0"]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn tiny_budget_exits_three() {
    let out = bkm(&[
        "char",
        "--kind",
        "verma",
        "--matrix",
        MATRIX_NEG_A2,
        "--lambda",
        LAMBDA_RHO,
        "--cutoff",
        "12",
        "--budget-mb",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = [
        "char",
        "--kind",
        "simple",
        "--matrix",
        MATRIX_NEG_A2,
        "--lambda",
        LAMBDA_RHO,
        "--cutoff",
        "6",
    ];
    let first = bkm(&args);
    assert_eq!(first.status.code(), Some(0));
    let again = bkm(&args);
    assert_eq!(first.stdout, again.stdout);
    let mut threaded: Vec<&str> = args.to_vec();
    threaded.extend(["--threads", "2"]);
    let two = bkm(&threaded);
    let last = threaded.len() - 1;
    threaded[last] = "1";
    let one = bkm(&threaded);
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(first.stdout, two.stdout);
}

#[test]
fn table_format_is_deterministic() {
    let args = [
        "weights",
        "--matrix",
        MATRIX_NEG_A2,
        "--lambda",
        LAMBDA_RHO,
        "--cutoff",
        "5",
        "--format",
        "table",
    ];
    let a = bkm(&args);
    let b = bkm(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_thm_d_n3_suite_passes() {
    let out = bkm(&["verify", "thmD-n3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS thmD-n3")), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn cache_round_trip_reproduces_output() {
    let dir = std::env::temp_dir().join(format!("bkm-cache-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let args = [
        "dn", "--n", "4", "--include-zero",
    ];
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_bkm"))
            .args(args)
            .env("BKM_CACHE_DIR", &dir)
            .output()
            .expect("binary runs")
    };
    let cold = run(&args);
    assert_eq!(cold.status.code(), Some(0), "{}", String::from_utf8_lossy(&cold.stderr));
    let entries = std::fs::read_dir(&dir).unwrap().count();
    assert!(entries > 0, "cache directory stayed empty");
    let warm = run(&args);
    assert_eq!(warm.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    std::fs::remove_dir_all(&dir).ok();
}
