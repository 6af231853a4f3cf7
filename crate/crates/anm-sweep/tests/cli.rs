//! End-to-end tests of the command-line binary: flag parsing, exit codes,
//! CSV output shape, and determinism across thread counts.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_anm-sweep"))
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("anm-sweep-cli-{}-{name}", std::process::id()))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const HEADER: &str = "engine,scenario,estimator,mode,i,mu_x,mu_n,trials,successes,undecided,errors,accuracy";

#[test]
fn smoke_run_writes_the_documented_csv() {
    let out_path = tmp("smoke.csv");
    let out = run(&[
        "--engine", "resit",
        "--scenarios", "GAU",
        "--estimators", "SH_SPACING_V",
        "--i-set", "explicit:1",
        "--trials", "3",
        "--samples", "60",
        "--seed", "5",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("wrote 1 records"), "stdout: {stdout}");

    let content = fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = content.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("resit,GAU,SH_SPACING_V,coupled,1,,,3,"));
    let _ = fs::remove_file(&out_path);
}

#[test]
fn park_rows_leave_the_estimator_column_empty() {
    let out_path = tmp("park.csv");
    let out = run(&[
        "--engine", "park",
        "--scenarios", "UNI",
        "--i-set", "explicit:0.5",
        "--trials", "2",
        "--samples", "60",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let content = fs::read_to_string(&out_path).unwrap();
    assert!(
        content.lines().nth(1).unwrap().starts_with("park,UNI,,coupled,0.5,,,2,"),
        "content: {content}"
    );
    let _ = fs::remove_file(&out_path);
}

#[test]
fn no_prior_rows_carry_the_hardwired_test() {
    let out_path = tmp("noprior.csv");
    let out = run(&[
        "--engine", "resit-noprior",
        "--scenarios", "UNI",
        "--i-set", "explicit:1",
        "--trials", "2",
        "--samples", "60",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let content = fs::read_to_string(&out_path).unwrap();
    assert!(
        content.lines().nth(1).unwrap().starts_with("resit-noprior,UNI,HSIC,coupled,1,,,2,"),
        "content: {content}"
    );
    let _ = fs::remove_file(&out_path);
}

#[test]
fn mean_sweep_swaps_the_coordinate_columns() {
    let out_path = tmp("means.csv");
    let out = run(&[
        "--engine", "resit",
        "--scenarios", "GAU+UNI",
        "--estimators", "SH_SPACING_V",
        "--mean-sweep",
        "--mean-set", "explicit:10:-10",
        "--mode", "decoupled",
        "--trials", "2",
        "--samples", "60",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let content = fs::read_to_string(&out_path).unwrap();
    assert!(
        content
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("resit,GAU+UNI,SH_SPACING_V,decoupled,,10,-10,2,"),
        "content: {content}"
    );
    let _ = fs::remove_file(&out_path);
}

#[test]
fn configuration_errors_exit_with_code_one() {
    let out_path = tmp("unused.csv");
    let cases: Vec<Vec<&str>> = vec![
        vec!["--engine", "magic", "--out", out_path.to_str().unwrap()],
        vec!["--engine", "resit", "--estimators", "NOT_A_SCORE", "--out", out_path.to_str().unwrap()],
        vec!["--engine", "resit", "--scenarios", "NOPE", "--out", out_path.to_str().unwrap()],
        vec!["--engine", "resit", "--i-set", "explicit:abc", "--out", out_path.to_str().unwrap()],
        vec!["--engine", "resit", "--i-set", "explicit:0", "--out", out_path.to_str().unwrap()],
        vec!["--engine", "resit", "--trials", "0", "--out", out_path.to_str().unwrap()],
        vec!["--engine", "resit", "--alpha", "1.0", "--out", out_path.to_str().unwrap()],
        vec!["--engine", "resit", "--threads", "zero", "--out", out_path.to_str().unwrap()],
        vec!["--engine", "resit", "--mean-sweep", "--mean-set", "explicit:5", "--out", out_path.to_str().unwrap()],
        vec!["--engine", "resit", "--no-such-flag", "--out", out_path.to_str().unwrap()],
        vec!["--out", out_path.to_str().unwrap()], // missing required --engine
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}: stderr {}", stderr_of(&out));
        assert!(!out_path.exists(), "args {args:?} wrote output despite failing");
    }
}

#[test]
fn unwritable_output_path_exits_with_code_two() {
    let out = run(&[
        "--engine", "resit",
        "--scenarios", "GAU",
        "--estimators", "SH_SPACING_V",
        "--i-set", "explicit:1",
        "--trials", "1",
        "--samples", "60",
        "--out", "/no-such-directory/result.csv",
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("/no-such-directory/result.csv"));
}

#[test]
fn help_and_version_exit_zero() {
    for flag in ["--help", "--version"] {
        let out = run(&[flag]);
        assert_eq!(out.status.code(), Some(0), "{flag} failed");
        assert!(!out.stdout.is_empty());
    }
    let help = String::from_utf8_lossy(&run(&["--help"]).stdout).into_owned();
    for flag in ["--engine", "--mode", "--i-set", "--mean-sweep", "--threads", "--out"] {
        assert!(help.contains(flag), "help text misses {flag}");
    }
}

#[test]
fn thread_count_does_not_change_the_output_file() {
    let path_single = tmp("threads-1.csv");
    let path_quad = tmp("threads-4.csv");
    let common = [
        "--engine", "resit",
        "--scenarios", "GAU+UNI,NLLAP",
        "--estimators", "HSIC,SH_KNN_2",
        "--i-set", "explicit:0.5,2",
        "--trials", "5",
        "--samples", "80",
        "--seed", "31",
    ];
    let single = bin()
        .args(common)
        .args(["--threads", "1", "--out", path_single.to_str().unwrap()])
        .output()
        .unwrap();
    let quad = bin()
        .args(common)
        .args(["--threads", "4", "--out", path_quad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(single.status.code(), Some(0), "stderr: {}", stderr_of(&single));
    assert_eq!(quad.status.code(), Some(0), "stderr: {}", stderr_of(&quad));
    let a = fs::read(&path_single).unwrap();
    let b = fs::read(&path_quad).unwrap();
    assert_eq!(a, b, "outputs diverged across thread counts");
    let _ = fs::remove_file(&path_single);
    let _ = fs::remove_file(&path_quad);
}
