//! Golden CLI tests: byte-exact outputs and exit codes for the worked
//! example and the counting table.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_filtergen");

const PAPER_SPEC: &str = "\
# worked example, order-4 filter
polynomial = x^5+x^3+1
initial_state = 10000
filter = x0*x1*x3*x4 + x0*x2*x3*x4 + x0*x1*x4 + x0*x1*x3 + x1*x3*x4 + x0*x3*x4 \
+ x1*x2 + x1*x3 + x2*x4 + x0*x2 + x0*x3 + x1 + x2 + x3
";

const IDENTITY_SPEC: &str = "\
polynomial = x^5+x^3+1
initial_state = 10000
filter = x0
";

const PAPER_KEYSTREAM: &str = "0010110110101101110000100101011";
const M_SEQUENCE: &str = "1000010101110110001111100110100";

const PAPER_F1_CANONICAL: &str = "x0*x1*x3*x4 + x0*x2*x3*x4 + x0*x1*x3 + x0*x1*x4 + x0*x3*x4 \
                                  + x1*x3*x4 + x0*x2 + x0*x3 + x1*x2 + x1*x3 + x2*x4 + x1 + x2 + x3";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.as_mut().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn write_file(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn assert_golden(out: &Output, expected_stdout: &str) {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected_stdout);
}

#[test]
fn golden_keystream_paper() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "paper.spec", PAPER_SPEC);
    let out = run(&["keystream", &spec, "--bits", "31"]);
    assert_golden(&out, &format!("{PAPER_KEYSTREAM}\n"));
}

#[test]
fn golden_keystream_identity_filter_is_the_m_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "x0.spec", IDENTITY_SPEC);
    let out = run(&["keystream", &spec, "--bits", "31"]);
    assert_golden(&out, &format!("{M_SEQUENCE}\n"));
}

#[test]
fn keystream_reads_stdin() {
    let out = run_with_stdin(&["keystream", "-", "--bits", "8"], IDENTITY_SPEC);
    assert_golden(&out, "10000101\n");
}

#[test]
fn malformed_polynomial_exits_2() {
    let out = run_with_stdin(
        &["keystream", "-", "--bits", "8"],
        "polynomial = y^5+1\ninitial_state = 10000\nfilter = x0\n",
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn non_primitive_polynomial_exits_2() {
    let out = run_with_stdin(
        &["keystream", "-", "--bits", "8"],
        "polynomial = x^4+x^3+x^2+x+1\ninitial_state = 1000\nfilter = x0\n",
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not primitive"));
}

#[test]
fn zero_initial_state_exits_2() {
    let out = run_with_stdin(
        &["keystream", "-", "--bits", "8"],
        "polynomial = x^5+x^3+1\ninitial_state = 00000\nfilter = x0\n",
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn golden_analyze_paper_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let seq = write_file(dir.path(), "z.txt", PAPER_KEYSTREAM);
    let out = run(&["analyze", "--seq", &seq, "--poly", "x^5+x^3+1", "--L", "5"]);
    assert_golden(
        &out,
        "length: 31\n\
         linear_complexity: 15\n\
         minimal_polynomial: x^15+x^11+x^10+x^9+x^8+x^7+x^5+x^3+x^2+x+1\n\
         cosets: 7(w3) 11(w3) 15(w4)\n\
         spectrum:\n\
         1: 0\n\
         3: 0\n\
         5: 0\n\
         7: alpha^24\n\
         11: alpha^4\n\
         15: alpha^6\n\
         const: 0\n\
         predicted_reciprocal_order: 2\n",
    );
}

#[test]
fn golden_analyze_all_zero_sequence() {
    let out = run_with_stdin(
        &["analyze", "--seq", "-", "--poly", "x^5+x^3+1", "--L", "5"],
        "0000000000000000000000000000000",
    );
    assert_golden(
        &out,
        "length: 31\n\
         linear_complexity: 0\n\
         minimal_polynomial: 1\n\
         cosets: none\n\
         spectrum:\n\
         1: 0\n\
         3: 0\n\
         5: 0\n\
         7: 0\n\
         11: 0\n\
         15: 0\n\
         const: 0\n\
         predicted_reciprocal_order: none\n",
    );
}

#[test]
fn golden_analyze_m_sequence() {
    let out = run_with_stdin(&["analyze", "--seq", "-", "--poly", "x^5+x^3+1"], M_SEQUENCE);
    assert_golden(
        &out,
        "length: 31\n\
         linear_complexity: 5\n\
         minimal_polynomial: x^5+x^3+1\n\
         cosets: 1(w1)\n\
         spectrum:\n\
         1: alpha^0\n\
         3: 0\n\
         5: 0\n\
         7: 0\n\
         11: 0\n\
         15: 0\n\
         const: 0\n\
         predicted_reciprocal_order: 4\n",
    );
}

#[test]
fn analyze_spec_and_sequence_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "paper.spec", PAPER_SPEC);
    let seq = write_file(dir.path(), "z.txt", PAPER_KEYSTREAM);
    let from_spec = run(&["analyze", "--spec", &spec]);
    let from_seq = run(&["analyze", "--seq", &seq, "--poly", "x^5+x^3+1"]);
    assert_eq!(from_spec.status.code(), Some(0));
    assert_eq!(from_spec.stdout, from_seq.stdout);
}

#[test]
fn analyze_length_mismatch_exits_2() {
    let out = run_with_stdin(&["analyze", "--seq", "-", "--poly", "x^5+x^3+1"], "001011");
    assert_eq!(out.status.code(), Some(2));
    let out = run_with_stdin(
        &["analyze", "--seq", "-", "--poly", "x^5+x^3+1", "--L", "4"],
        PAPER_KEYSTREAM,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn golden_equivalent_paper_with_verify() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "paper.spec", PAPER_SPEC);
    let out = run(&["equivalent", &spec, "--verify"]);
    assert_golden(
        &out,
        &format!(
            "polynomial = x^5+x^2+1\n\
             initial_state = 10010\n\
             filter = x0*x2 + x1*x2 + x1*x3 + x1*x4 + x3*x4 + x1 + x2 + x4\n\
             \n\
             original:\n\
             \x20 polynomial: x^5+x^3+1\n\
             \x20 initial_state: 10000\n\
             \x20 filter: {}\n\
             \x20 order: 4\n\
             equivalent:\n\
             \x20 polynomial: x^5+x^2+1\n\
             \x20 initial_state: 10010\n\
             \x20 filter: x0*x2 + x1*x2 + x1*x3 + x1*x4 + x3*x4 + x1 + x2 + x4\n\
             \x20 order: 2\n\
             source cosets:\n\
             \x20 7: weight 3, alpha^24\n\
             \x20 11: weight 3, alpha^4\n\
             \x20 15: weight 4, alpha^6\n\
             mapped cosets:\n\
             \x20 1: weight 1, alpha^19\n\
             \x20 3: weight 2, alpha^28\n\
             \x20 5: weight 2, alpha^30\n\
             weaker: true\n\
             verify: keystreams identical (31 bits)\n",
            normalize_ws(PAPER_F1_CANONICAL)
        ),
    );
}

#[test]
fn equivalent_k_1_is_the_identity_transform() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "paper.spec", PAPER_SPEC);
    let out = run(&["equivalent", &spec, "--k", "1", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    // same LFSR, canonical-phase state, canonical form of the same filter
    assert!(text.starts_with(&format!(
        "polynomial = x^5+x^3+1\ninitial_state = 10000\nfilter = {}\n",
        normalize_ws(PAPER_F1_CANONICAL)
    )));
    assert!(text.contains("weaker: false"));
    assert!(text.ends_with("verify: keystreams identical (31 bits)\n"));
}

#[test]
fn golden_equivalent_of_the_identity_filter_has_order_4() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "x0.spec", IDENTITY_SPEC);
    let out = run(&["equivalent", &spec, "--verify"]);
    assert_golden(
        &out,
        "polynomial = x^5+x^2+1\n\
         initial_state = 10010\n\
         filter = x0*x1*x2*x4 + x1*x2*x3*x4 + x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x0*x2*x4 \
         + x0*x3*x4 + x1*x2*x3 + x1*x2*x4 + x1*x3*x4 + x2*x3*x4 + x0*x2 + x0*x3 + x1*x2 \
         + x1*x4 + x2*x3 + x0 + x1 + x3\n\
         \n\
         original:\n\
         \x20 polynomial: x^5+x^3+1\n\
         \x20 initial_state: 10000\n\
         \x20 filter: x0\n\
         \x20 order: 1\n\
         equivalent:\n\
         \x20 polynomial: x^5+x^2+1\n\
         \x20 initial_state: 10010\n\
         \x20 filter: x0*x1*x2*x4 + x1*x2*x3*x4 + x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x0*x2*x4 \
         + x0*x3*x4 + x1*x2*x3 + x1*x2*x4 + x1*x3*x4 + x2*x3*x4 + x0*x2 + x0*x3 + x1*x2 \
         + x1*x4 + x2*x3 + x0 + x1 + x3\n\
         \x20 order: 4\n\
         source cosets:\n\
         \x20 1: weight 1, alpha^0\n\
         mapped cosets:\n\
         \x20 15: weight 4, alpha^0\n\
         weaker: false\n\
         verify: keystreams identical (31 bits)\n",
    );
}

#[test]
fn golden_enumerate() {
    let out = run(&["enumerate", "--L", "2"]);
    assert_golden(&out, "L: 2\nclasses: 1\nbase: x^2+x+1\nk = 1,2: x^2+x+1\n");

    let out = run(&["enumerate", "--L", "4"]);
    assert_golden(
        &out,
        "L: 4\nclasses: 2\nbase: x^4+x+1\nk = 1,2,4,8: x^4+x+1\nk = 7,14,13,11: x^4+x^3+1\n",
    );

    let out = run(&["enumerate", "--L", "5"]);
    assert_golden(
        &out,
        "L: 5\n\
         classes: 6\n\
         base: x^5+x^2+1\n\
         k = 1,2,4,8,16: x^5+x^2+1\n\
         k = 3,6,12,24,17: x^5+x^4+x^3+x^2+1\n\
         k = 5,10,20,9,18: x^5+x^4+x^2+x+1\n\
         k = 7,14,28,25,19: x^5+x^3+x^2+x+1\n\
         k = 11,22,13,26,21: x^5+x^4+x^3+x+1\n\
         k = 15,30,29,27,23: x^5+x^3+1\n",
    );

    let out = run(&["enumerate", "--L", "6"]);
    assert_golden(
        &out,
        "L: 6\n\
         classes: 6\n\
         base: x^6+x+1\n\
         k = 1,2,4,8,16,32: x^6+x+1\n\
         k = 5,10,20,40,17,34: x^6+x^5+x^2+x+1\n\
         k = 11,22,44,25,50,37: x^6+x^5+x^3+x^2+1\n\
         k = 13,26,52,41,19,38: x^6+x^4+x^3+x+1\n\
         k = 23,46,29,58,53,43: x^6+x^5+x^4+x+1\n\
         k = 31,62,61,59,55,47: x^6+x^5+1\n",
    );
}

#[test]
fn enumerate_out_of_range_exits_2() {
    for l in ["1", "25", "30"] {
        let out = run(&["enumerate", "--L", l]);
        assert_eq!(out.status.code(), Some(2), "L={l}");
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_file(dir.path(), "paper.spec", PAPER_SPEC);
    let a = run(&["equivalent", &spec, "--verify"]);
    let b = run(&["equivalent", &spec, "--verify"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["enumerate", "--L", "6"]);
    let b = run(&["enumerate", "--L", "6"]);
    assert_eq!(a.stdout, b.stdout);
}

/// Collapses the multi-line string constants' indentation to single spaces.
fn normalize_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
