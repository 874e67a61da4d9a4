//! End-to-end tests of the `chordw` binary: output contracts, exit codes,
//! stdin batching, and byte determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn chordw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chordw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn chordw_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chordw"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("binary runs")
}

fn stdout_lines(output: &Output) -> Vec<String> {
    String::from_utf8(output.stdout.clone())
        .expect("utf8 stdout")
        .lines()
        .map(str::to_string)
        .collect()
}

#[test]
fn invariants_of_the_crossing_pair() {
    let output = chordw(&["invariants", "1 2 1 2"]);
    assert!(output.status.success());
    let lines = stdout_lines(&output);
    assert_eq!(lines.len(), 1);
    assert_eq!(
        lines[0],
        concat!(
            r#"{"diagram":"1 2 1 2","degree":2,"rank":2,"det":1,"nullity":0,"#,
            r#""components":1,"conway":1,"homfly":"a^2","homfly_deframed":"-a^2*b^2 + a^2","#,
            r#""kauffman":"a^2*b - a^2","kauffman_deframed":"-a^2*b^2 + 3*a^2*b - 2*a^2"}"#
        )
    );
}

#[test]
fn invariants_of_the_plain_band() {
    let output = chordw(&["invariants", "1 1"]);
    assert!(output.status.success());
    let value: serde_json::Value =
        serde_json::from_slice(output.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(value["components"], 2);
    assert_eq!(value["conway"], 0);
    assert_eq!(value["homfly"], "a*b");
    assert_eq!(value["homfly_deframed"], "0");
    assert_eq!(value["kauffman"], "a*b - a");
}

#[test]
fn reruns_are_byte_identical() {
    let first = chordw(&["invariants", "1 2 3 1 2 3"]);
    let second = chordw(&["invariants", "1 2 3 1 2 3"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let first = chordw(&["check", "--kind", "4t", "--weights", "kauffman", "-n", "4"]);
    let second = chordw(&["check", "--kind", "4t", "--weights", "kauffman", "-n", "4"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn worker_override_does_not_change_bytes() {
    let parallel = chordw(&["check", "--kind", "4t", "--weights", "conway", "-n", "4"]);
    let single = Command::new(env!("CARGO_BIN_EXE_chordw"))
        .args(["check", "--kind", "4t", "--weights", "conway", "-n", "4"])
        .env("CHORDW_THREADS", "1")
        .output()
        .expect("binary runs");
    assert!(parallel.status.success());
    assert!(single.status.success());
    assert_eq!(parallel.stdout, single.stdout);
}

#[test]
fn enumerate_lists_canonical_words() {
    let output = chordw(&["enumerate", "-n", "2"]);
    assert!(output.status.success());
    assert_eq!(
        stdout_lines(&output),
        vec![
            r#"{"degree":2,"diagram":"1 1 2 2"}"#,
            r#"{"degree":2,"diagram":"1 2 1 2"}"#,
        ]
    );
    let marked = chordw(&["enumerate", "-n", "1", "--marked"]);
    assert_eq!(stdout_lines(&marked).len(), 2);
}

#[test]
fn surgery_counts_and_traces() {
    let output = chordw(&["surgery", "1# 1", "1 1", "1 2 1 2"]);
    assert!(output.status.success());
    let counts: Vec<u64> = stdout_lines(&output)
        .iter()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["components"]
                .as_u64()
                .unwrap()
        })
        .collect();
    assert_eq!(counts, vec![1, 2, 1]);
    let traced = chordw(&["surgery", "--trace", "1 1"]);
    let value: serde_json::Value =
        serde_json::from_slice(traced.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    let cycles = value["trace"].as_array().unwrap();
    assert_eq!(cycles.len(), 2);
    // two arcs in total, each visited exactly once
    let steps: usize = cycles.iter().map(|c| c.as_array().unwrap().len()).sum();
    assert_eq!(steps, 2);
}

#[test]
fn caravan_reports_class_and_realization() {
    let output = chordw(&["caravan", "1# 2# 1 2"]);
    assert!(output.status.success());
    let value: serde_json::Value =
        serde_json::from_slice(output.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(value["ones"], 1);
    assert_eq!(value["zeros"], 1);
    assert_eq!(value["hyperbolics"], 0);
    assert_eq!(value["realization"], "1 1 2# 2");
}

#[test]
fn stdin_supplies_one_diagram_per_line() {
    let output = chordw_stdin(&["surgery"], "1 1\n\n1 2 1 2\n");
    assert!(output.status.success());
    assert_eq!(stdout_lines(&output).len(), 2);
}

#[test]
fn check_vanishing_exits_by_outcome() {
    let pass = chordw(&[
        "check",
        "--kind",
        "4t",
        "--weights",
        "conway,homfly",
        "-n",
        "3",
    ]);
    assert_eq!(pass.status.code(), Some(0));
    for line in stdout_lines(&pass) {
        let value: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(value["failures"], 0);
    }
    // the unprojected Kauffman polynomial is not slide-invariant
    let fail = chordw(&["check", "--kind", "2t", "--weights", "kauffman", "-n", "3"]);
    assert_eq!(fail.status.code(), Some(2));
}

#[test]
fn quotient_dimensions_for_each_space() {
    let output = chordw(&["quotient-dim", "-n", "2", "--space", "bm"]);
    assert!(output.status.success());
    let value: serde_json::Value =
        serde_json::from_slice(output.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(value["diagrams"], 6);
    assert_eq!(value["quotient_dimension"], 4);
    let a4 = chordw(&["quotient-dim", "-n", "4", "--space", "a"]);
    let value: serde_json::Value =
        serde_json::from_slice(a4.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(value["quotient_dimension"], 3);
}

#[test]
fn parse_and_usage_errors_exit_one() {
    let bad_word = chordw(&["invariants", "1 2 1"]);
    assert_eq!(bad_word.status.code(), Some(1));
    assert!(!bad_word.stderr.is_empty());
    let marked_into_unmarked = chordw(&["invariants", "1# 1"]);
    assert_eq!(marked_into_unmarked.status.code(), Some(1));
    let unknown_command = chordw(&["frobnicate"]);
    assert_eq!(unknown_command.status.code(), Some(1));
    let unknown_weight = chordw(&["check", "--kind", "4t", "--weights", "euler", "-n", "2"]);
    assert_eq!(unknown_weight.status.code(), Some(1));
    let over_cap = chordw(&["quotient-dim", "-n", "9", "--space", "a"]);
    assert_eq!(over_cap.status.code(), Some(1));
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_chordw"))
        .args(["enumerate", "-n", "1"])
        .env("CHORDW_THREADS", "zero")
        .output()
        .expect("binary runs");
    assert_eq!(bad_threads.status.code(), Some(1));
}

#[test]
fn human_mode_renders_tables() {
    let output = chordw(&["invariants", "--human", "1 2 1 2"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("kauffman"));
    assert!(text.contains("a^2*b - a^2"));
    assert!(!text.contains('{'));
}

#[test]
fn selftest_runs_every_criterion() {
    let output = chordw(&["selftest"]);
    assert_eq!(output.status.code(), Some(0));
    let lines = stdout_lines(&output);
    assert_eq!(lines.len(), 12);
    for (i, line) in lines.iter().enumerate() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(value["criterion"], i as u64 + 1);
        assert_eq!(value["passed"], true);
        assert_eq!(value["failures"], 0);
    }
}
