//! End-to-end tests of the binary: golden structured output, the exit
//! code contract, and output determinism.

use std::process::Command;

fn nsmac(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_nsmac"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn compute_e_structured_golden() {
    let (stdout, _, code) = nsmac(&[
        "compute", "e", "--n", "2", "--lambda", "1,0", "--format", "structured",
    ]);
    assert_eq!(code, 0);
    let want = "\
nsmac-report 0.1.0
command: compute E
mode: symbolic
n: 2
deg: -
k: -
lambda: 1,0
---
result E[1,0]: x1 + (q - q*t)/(1 - q*t)*x2
spectral E[1,0]: q*t, (1)/(t)
---
status: ok
";
    assert_eq!(stdout, want);
}

#[test]
fn compute_a_table_golden() {
    let (stdout, _, code) = nsmac(&[
        "compute", "a", "--n", "2", "--deg", "1", "--format", "structured",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("result a[1,0]: (1 - q*t)/(1 - q)"));
    assert!(stdout.contains("result a[0,1]: (1 - q*t^2)/(1 - q*t)"));
}

#[test]
fn compute_c_value() {
    let (stdout, _, code) = nsmac(&[
        "compute", "c", "--n", "2", "--k", "1", "--lambda", "1,0", "--format", "structured",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("result C[1,0] k=1: 1 + q + q^2"));
}

#[test]
fn verify_suites_exit_zero() {
    for args in [
        vec!["verify", "eigen", "--n", "2", "--deg", "2"],
        vec!["verify", "reproducing", "--n", "1", "--k", "1", "--deg", "2"],
        vec!["verify", "lemma24", "--n", "2", "--deg", "2"],
    ] {
        let (stdout, stderr, code) = nsmac(&args);
        assert_eq!(code, 0, "{args:?}: {stdout} {stderr}");
        assert!(stdout.contains("status: ok"), "{args:?}");
    }
}

#[test]
fn output_is_byte_deterministic() {
    let run = || {
        nsmac(&[
            "verify", "cauchy", "--n", "2", "--deg", "2", "--format", "structured",
        ])
        .0
    };
    assert_eq!(run(), run());
}

#[test]
fn fastcheck_records_eval_point_and_is_replayable() {
    let run = |seed: &str| {
        nsmac(&[
            "verify", "eigen", "--n", "2", "--deg", "2", "--mode", "fastcheck", "--seed", seed,
            "--format", "structured",
        ])
    };
    let (a, _, code) = run("5");
    assert_eq!(code, 0);
    assert!(a.contains("eval-point: q = "));
    assert!(a.contains("seed: 5"));
    let (b, _, _) = run("5");
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_two() {
    // b of a non-partition
    let (_, stderr, code) = nsmac(&["compute", "b", "--n", "2", "--lambda", "0,1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not a partition"));
    // malformed lambda
    let (_, _, code) = nsmac(&["compute", "e", "--n", "2", "--lambda", "1,x"]);
    assert_eq!(code, 2);
    // lambda length mismatch
    let (_, _, code) = nsmac(&["compute", "e", "--n", "3", "--lambda", "1,0"]);
    assert_eq!(code, 2);
    // missing selection
    let (_, _, code) = nsmac(&["compute", "e", "--n", "2"]);
    assert_eq!(code, 2);
    // unknown flag (clap)
    let (_, _, code) = nsmac(&["compute", "e", "--bogus"]);
    assert_eq!(code, 2);
}

#[test]
fn resource_bounds_exit_three() {
    let (_, stderr, code) = nsmac(&["compute", "e", "--n", "9", "--lambda", "1"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("resource bound"));
    let (_, _, code) = nsmac(&["verify", "eigen", "--n", "2", "--deg", "99"]);
    assert_eq!(code, 3);
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join("nsmac-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let (stdout, _, code) = nsmac(&[
        "compute", "norm", "--n", "2", "--k", "1", "--lambda", "1,0", "--format", "structured",
    ]);
    assert_eq!(code, 0);
    let (empty, _, code) = nsmac(&[
        "compute",
        "norm",
        "--n",
        "2",
        "--k",
        "1",
        "--lambda",
        "1,0",
        "--format",
        "structured",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(empty.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    // (1 - q^3)/(1 - q^2) in fully reduced canonical form
    assert!(stdout.contains("result norm[1,0] k=1: (1 + q + q^2)/(1 + q)"));
}
