//! Black-box tests of the command-line surface: exact outputs for the
//! documented examples, exit-code conventions, stdin handling, and format
//! errors.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use hurwitz::fano_octonions::MultTable;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin was piped")
        .write_all(stdin.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn galois_3_2_prints_16() {
    let out = run(&["galois", "--n", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "16\n");
}

#[test]
fn galois_2_2_prints_5() {
    let out = run(&["galois", "--n", "2", "--q", "2"]);
    assert_eq!(stdout_of(&out), "5\n");
}

#[test]
fn galois_rejects_dot_format() {
    let out = run(&["galois", "--n", "3", "--q", "2", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).starts_with("error: "));
}

#[test]
fn galois_accepts_prime_power_q() {
    // q-combinatorics is polynomial in q, so any positive q evaluates.
    let out = run(&["galois", "--n", "3", "--q", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "44\n");
}

#[test]
fn galois_rejects_nonpositive_q() {
    let out = run(&["galois", "--n", "3", "--q", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).starts_with("error: "));
}

#[test]
fn fano_json_contains_the_first_line_of_pg22() {
    let out = run(&["fano", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    let lines = value.as_array().expect("array of lines");
    assert_eq!(lines.len(), 7);
    let wanted = serde_json::json!(["010", "100", "110"]);
    assert!(
        lines.contains(&wanted),
        "missing {wanted} in {lines:?}"
    );
}

#[test]
fn subspaces_count_matches_the_gaussian_binomial() {
    let out = run(&["subspaces", "--n", "4", "--q", "2", "--k", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(value.as_array().expect("array").len(), 35);
}

#[test]
fn lattice_dot_is_wellformed_and_deterministic() {
    let first = run(&["lattice", "--n", "3", "--q", "2", "--format", "dot"]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout_of(&first);
    assert!(text.starts_with("digraph"));
    assert!(text.trim_end().ends_with('}'));
    let second = run(&["lattice", "--n", "3", "--q", "2", "--format", "dot"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn octonion_table_json_round_trips() {
    let out = run(&["octonion-table", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let decoded = MultTable::from_json(&text).expect("emitted JSON decodes");
    assert_eq!(decoded, MultTable::classic());
    assert_eq!(decoded.to_json().expect("re-encodes").trim_end(), text.trim_end());
}

#[test]
fn identity_n2_prints_the_two_square_identity() {
    let out = run(&["identity", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "(a1^2+a2^2)(b1^2+b2^2) = (a1b1-a2b2)^2 + (a2b1+a1b2)^2\n"
    );
}

#[test]
fn identity_rejects_n16_with_an_explanation() {
    let out = run(&["identity", "--n", "16"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("16"));
}

#[test]
fn probe_reports_an_alternativity_finding_at_level_4() {
    let out = run(&["probe", "--level", "4", "--law", "alternative"]);
    // A law that fails to hold is a finding, not a CLI failure.
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("holds: false"), "{text}");
    assert!(text.contains("counterexample: "), "{text}");
    assert!(text.contains("recheck: true"), "{text}");
}

#[test]
fn probe_rejects_level_5() {
    let out = run(&["probe", "--level", "5", "--law", "commutative"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("level 5"));
}

#[test]
fn validate_accepts_the_classic_table() {
    let table = MultTable::classic().to_json().expect("encodes");
    let out = run_with_stdin(&["validate"], &table);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("all-hold: true"));
}

#[test]
fn validate_rejects_a_defective_table() {
    // Flip one off-diagonal sign: the table stays anticommutative-looking in
    // that cell's mirror but no longer composes norms.
    let mut table = MultTable::classic();
    let entry = table.product(1, 3);
    table.set_product(1, 3, entry.negate());
    table.set_product(3, 1, entry);
    let json = table.to_json().expect("encodes");
    let out = run_with_stdin(&["validate"], &json);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("all-hold: false"), "{text}");
    assert!(text.contains("failure: "), "{text}");
}

#[test]
fn validate_rejects_malformed_json() {
    let out = run_with_stdin(&["validate"], "{\"dim\": 8}");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).starts_with("error: "));
}

#[test]
fn sweep_finds_sixteen_valid_orientations() {
    let out = run(&["sweep", "--orientations", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(value["total"], serde_json::json!(128));
    assert_eq!(value["valid_masks"].as_array().expect("array").len(), 16);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["galois", "--q", "2"] as &[&str], // missing --n
        &["galois", "--n", "3", "--q", "2", "--frobnicate"],
        &["sweep"], // requires --orientations
        &["no-such-command"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        assert!(!stderr_of(&out).is_empty(), "args: {args:?}");
    }
}

#[test]
fn probe_seed_changes_sampled_trials_but_not_conclusions() {
    let a = run(&["probe", "--level", "2", "--law", "commutative", "--seed", "1"]);
    let b = run(&["probe", "--level", "2", "--law", "commutative", "--seed", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    for out in [&a, &b] {
        assert!(stdout_of(out).contains("holds: false"));
    }
}

#[test]
fn octonion_table_text_shows_the_identity_row() {
    let out = run(&["octonion-table"]);
    assert_eq!(out.status.code(), Some(0));
    let first_line = stdout_of(&out).lines().next().expect("nonempty").to_string();
    assert_eq!(first_line, "+e0 +e1 +e2 +e3 +e4 +e5 +e6 +e7");
}
