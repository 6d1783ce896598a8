//! Exit codes and output formats of the `rainbow` binary.

use std::path::Path;
use std::process::{Command, Output};

use rainbow_core::LatinRectangle;

fn rainbow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(args)
        .env_remove("RAINBOW_WORKERS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const EXAMPLE: &str = "0 2 4 6 1 3 5\n1 3 5 0 2 4 6\n3 5 0 2 4 6 1\n";

#[test]
fn construct_outputs_and_errors() {
    let out = rainbow(&["construct", "singer", "3"]);
    assert_eq!(code(&out), 0);
    let rect = LatinRectangle::parse_text(&stdout(&out)).unwrap();
    assert_eq!((rect.rows(), rect.cols()), (3, 7));

    let out = rainbow(&["construct", "block", "2", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0 1 2 3 4 5\n1 2 0 4 5 3\n");

    let out = rainbow(&["construct", "block", "2", "3", "--json"]);
    let rect = LatinRectangle::parse_json(&stdout(&out)).unwrap();
    assert_eq!((rect.rows(), rect.cols()), (2, 6));

    assert_eq!(code(&rainbow(&["construct", "singer", "7"])), 3);
    assert_eq!(code(&rainbow(&["construct", "block", "3", "5"])), 3);
}

#[test]
fn construct_kron_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "0 1 2\n1 2 0\n");
    let b = write(dir.path(), "b.json", r#"{"rows":2,"cols":2,"cells":[[0,1],[1,0]]}"#);
    let out = rainbow(&["construct", "kron", &a, &b, "--t", "3"]);
    assert_eq!(code(&out), 0);
    let rect = LatinRectangle::parse_text(&stdout(&out)).unwrap();
    assert_eq!(rect.row(2), &[3, 4, 5, 0, 1, 2]);
    assert_eq!(code(&rainbow(&["construct", "kron", &a, &b, "--t", "2"])), 3);
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let example = write(dir.path(), "example.txt", EXAMPLE);
    let out = rainbow(&["check", &example, "3", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("blocker verified"));

    let out = rainbow(&["check", &example, "2", "2"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("rainbow 2x2"));

    assert_eq!(code(&rainbow(&["check", &example, "2", "3"])), 1);
    assert_eq!(code(&rainbow(&["check", &example, "3", "2", "--either"])), 1);

    let ragged = write(dir.path(), "ragged.txt", "0 1\n1\n");
    assert_eq!(code(&rainbow(&["check", &ragged, "2", "2"])), 4);
    let repeat = write(dir.path(), "repeat.txt", "0 1\n0 2\n");
    assert_eq!(code(&rainbow(&["check", &repeat, "2", "2"])), 4);
    let junk = write(dir.path(), "junk.txt", "0 x\n");
    assert_eq!(code(&rainbow(&["check", &junk, "1", "1"])), 4);
    assert_eq!(code(&rainbow(&["check", "/nonexistent/grid.txt", "1", "1"])), 4);
}

#[test]
fn decide_exit_codes_and_json() {
    assert_eq!(code(&rainbow(&["decide", "2", "4", "2", "2"])), 0);
    assert_eq!(code(&rainbow(&["decide", "2", "6", "2", "3"])), 1);
    assert_eq!(code(&rainbow(&["decide", "2", "4", "2", "2", "--max-nodes", "1"])), 2);

    let out = rainbow(&["decide", "2", "3", "2", "2", "--json", "--workers", "2"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["arrows"], false);
    let cert: LatinRectangle = serde_json::from_value(v["certificate"].clone()).unwrap();
    assert_eq!((cert.rows(), cert.cols()), (2, 3));
    assert!(v["nodes"].as_u64().is_some() && v["ms"].as_f64().is_some());
    assert!(stdout(&out).starts_with(r#"{"arrows":false,"certificate":"#));
}

#[test]
fn usage_errors_are_distinct_from_verdicts() {
    assert_eq!(code(&rainbow(&["decide", "2", "4", "2", "2", "--bogus"])), 64);
    assert_eq!(code(&rainbow(&["decide", "2", "4", "2", "2", "--workers", "0"])), 64);
    assert_eq!(code(&rainbow(&["frobnicate"])), 64);
    assert_eq!(code(&rainbow(&["--help"])), 0);
    assert_eq!(code(&rainbow(&["decide", "4", "2", "2", "2"])), 3);
}

#[test]
fn workers_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(["decide", "3", "4", "2", "3", "--json"])
        .env("RAINBOW_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let bad = Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(["decide", "3", "4", "2", "2"])
        .env("RAINBOW_WORKERS", "none")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 64);
}

#[test]
fn anti_ramsey_reports() {
    let out = rainbow(&["arv", "2", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("AR_V(K_{2,2}) = 6, witness K_{2,4}"));

    let out = rainbow(&["are", "2", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 8);
    assert_eq!(v["complete"], true);
    assert_eq!(v["witness_host"], serde_json::json!([2, 4]));

    assert_eq!(code(&rainbow(&["arv", "2", "2", "--max-nodes", "1"])), 2);
    assert_eq!(code(&rainbow(&["arv", "3", "2"])), 3);
}

#[test]
fn plane_json() {
    let out = rainbow(&["plane", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with(r#"{"q":2,"modulus_poly":[1,1,0,1],"D":[0,1,3],"lines":"#));
    assert_eq!(code(&rainbow(&["plane", "6"])), 3);
}

#[test]
fn verify_suite_subset_and_budget() {
    let out = rainbow(&["verify-suite", "--only", "1,3,9"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 3);

    let out = rainbow(&["verify-suite", "--only", "1,8", "--max-nodes", "1", "--json"]);
    assert_ne!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["passed"] == false));
}
