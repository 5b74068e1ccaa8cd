//! End-to-end checks of the `hj` binary: output, JSON shape, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hj"))
        .args(args)
        .output()
        .expect("failed to run hj")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process terminated by signal")
}

/// Every --json invocation must print exactly one JSON document.
fn parse_single_json(output: &Output) -> Value {
    serde_json::from_str(stdout(output).trim()).expect("stdout must be a single JSON document")
}

#[test]
fn color_prints_residue() {
    let out = hj(&["color", "--r", "5", "--t", "2,4,2", "--word", "11122133"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn color_json_exposes_the_chain() {
    let out = hj(&["color", "--r", "5", "--t", "2,-1,2", "--word", "11122133", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    assert_eq!(value["plus_extension"], "1111221331");
    assert_eq!(value["contraction"], "12131");
    assert_eq!(value["symbolic"], "t1+t2+t1+t3+t1");
    assert_eq!(value["color"], 2);
    assert_eq!(value["t"], serde_json::json!([2, 4, 2]));
}

#[test]
fn color_rejects_bad_word() {
    let out = hj(&["color", "--r", "5", "--word", "14"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn color_empty_word() {
    let out = hj(&["color", "--r", "5", "--word", "-"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn verify_verified_json() {
    let out = hj(&["verify", "--r", "3", "--n", "9", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    assert_eq!(value["verdict"], "verified");
    assert_eq!(value["counterexample"], Value::Null);
    assert_eq!(value["report"]["templates_scanned"], 242_461);
}

#[test]
fn verify_even_r_requires_flag() {
    let out = hj(&["verify", "--r", "4", "--n", "3"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("--even-r"), "stderr should point at --even-r: {stderr}");

    let out = hj(&["verify", "--r", "4", "--n", "5", "--even-r", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    assert_eq!(value["verdict"], "verified");
    assert_eq!(value["interval_bound"], 3);
}

#[test]
fn scan_tplus_json_schema() {
    let out = hj(&["scan", "--coloring", "tplus", "--r", "3", "--n", "6", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    for key in [
        "m",
        "n",
        "spec",
        "templates_scanned",
        "monochromatic_count",
        "min_q",
        "witness",
        "q_histogram",
        "elapsed_ms",
    ] {
        assert!(value.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(value["templates_scanned"], 4096 - 729);
}

#[test]
fn scan_file_coloring() {
    let dir = std::env::temp_dir().join("hjline-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join("two_square.hjcolor");
    std::fs::write(&path, "hjcolor 1 m=2 n=2 r=2\n0 0 1 1\n").unwrap();
    let out = hj(&["scan", "--coloring", &format!("file:{}", path.display()), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    assert_eq!(value["monochromatic_count"], 2);
    assert_eq!(value["min_q"], 1);
    assert_eq!(value["witness"], "1*");
    std::fs::remove_file(&path).unwrap();

    let out = hj(&["scan", "--coloring", "file:/does/not/exist.hjcolor"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scan_random_coloring() {
    let out = hj(&[
        "scan", "--coloring", "random:99", "--m", "2", "--n", "4", "--r", "2", "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    assert_eq!(value["templates_scanned"], 81 - 16);
    let again = hj(&[
        "scan", "--coloring", "random:99", "--m", "2", "--n", "4", "--r", "2", "--json",
    ]);
    let mut a = parse_single_json(&out);
    let mut b = parse_single_json(&again);
    a.as_object_mut().unwrap().remove("elapsed_ms");
    b.as_object_mut().unwrap().remove("elapsed_ms");
    assert_eq!(a, b, "seeded scans must be reproducible");
}

#[test]
fn scan_unknown_coloring_is_usage_error() {
    let out = hj(&["scan", "--coloring", "magic", "--n", "3"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn claim_check_is_seed_deterministic() {
    let args = ["claim-check", "--cases", "2000", "--seed", "7", "--json"];
    let first = hj(&args);
    let second = hj(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(stdout(&first), stdout(&second));
    let value = parse_single_json(&first);
    assert_eq!(value["mismatches"], 0);
    assert_eq!(value["ok"], true);

    let other_seed = hj(&["claim-check", "--cases", "2000", "--seed", "8", "--json"]);
    assert_ne!(
        parse_single_json(&first)["sequence_digest"],
        parse_single_json(&other_seed)["sequence_digest"],
        "different seeds should draw different case sequences"
    );
}

#[test]
fn table_symbolic_and_numeric() {
    let out = hj(&["table", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    assert_eq!(
        value["symbolic"]["h1"],
        serde_json::json!(["-t1", "t1", "t1", "t1", "0", "0"])
    );
    assert_eq!(
        value["symbolic"]["h2"],
        serde_json::json!(["t2", "-t2", "t2", "0", "t2", "0"])
    );
    assert_eq!(
        value["symbolic"]["h3"],
        serde_json::json!(["t3", "t3", "-t3", "0", "0", "t3"])
    );
    assert_eq!(value["numeric"], Value::Null);

    let out = hj(&["table", "--r", "7", "--json"]);
    let value = parse_single_json(&out);
    assert_eq!(value["t"], serde_json::json!([2, 6, 2]));
    assert_eq!(
        value["numeric"]["h1"],
        serde_json::json!([5, 2, 2, 2, 0, 0])
    );
}

#[test]
fn pigeonhole_finds_line() {
    let out = hj(&["pigeonhole", "--colors", "0,0,1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "1*\n");

    let out = hj(&["pigeonhole", "--colors", "0,1,1,0", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    assert_eq!(value["template"], "1*2");
    assert_eq!(value["interval_count"], 1);

    let out = hj(&["pigeonhole", "--colors", "0,1,2"]);
    assert_eq!(exit_code(&out), 1);

    let out = hj(&["pigeonhole", "--n", "5", "--r", "3", "--seed", "11", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    assert_eq!(value["interval_count"], 1);
}

#[test]
fn oracle_verdicts_and_exit_codes() {
    let out = hj(&["oracle", "--m", "2", "--n", "2", "--r", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).starts_with("true"));

    let out = hj(&["oracle", "--m", "2", "--n", "2", "--r", "3", "--json"]);
    assert_eq!(exit_code(&out), 1);
    let value = parse_single_json(&out);
    assert_eq!(value["every_coloring_has_line"], false);
    assert!(value["witness"].is_array());

    // Guard trips before any search.
    let out = hj(&["oracle", "--m", "3", "--n", "3", "--r", "2"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn min_n_json() {
    let out = hj(&["min-n", "--r", "3", "--n-max", "8", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    assert_eq!(value["n"], 5);
    assert_eq!(value["report"]["min_q"], 3);

    let out = hj(&["min-n", "--r", "3", "--n-max", "4", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let value = parse_single_json(&out);
    assert_eq!(value["n"], Value::Null);
}

#[test]
fn unknown_flags_are_rejected() {
    let out = hj(&["scan", "--coloring", "tplus", "--r", "3", "--n", "4", "--frobnicate"]);
    assert_eq!(exit_code(&out), 2);

    let out = hj(&["no-such-command"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn workers_do_not_change_output() {
    let mut reports = Vec::new();
    for workers in ["1", "2", "8"] {
        let out = hj(&[
            "scan", "--coloring", "tplus", "--r", "3", "--n", "7", "--workers", workers,
            "--json",
        ]);
        assert_eq!(exit_code(&out), 0);
        let mut value = parse_single_json(&out);
        value.as_object_mut().unwrap().remove("elapsed_ms");
        reports.push(serde_json::to_string(&value).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[0], reports[2]);
}
