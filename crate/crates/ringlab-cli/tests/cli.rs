//! End-to-end runs of the `ringlab` binary, pinned to the exit-code
//! contract: 0 holds/found, 1 fails/empty (witness printed), 2 error.

use std::io::Write;
use std::process::{Command, Output};

fn ringlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn failing_check_exits_one_and_prints_the_witness() {
    let out = ringlab(&["check", "--ring", "U(2, Zmod(2))", "--property", "left_n_reflexive"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("fails"), "no verdict in: {text}");
    assert!(text.contains("a = [[0,1],[0,0]]"), "no witness in: {text}");
}

#[test]
fn passing_checks_exit_zero() {
    let out = ringlab(&["check", "--ring", "M(2, Zmod(2))", "--property", "n_reflexive"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("holds"));

    let out = ringlab(&["check", "--ring", "Zmod(1)", "--property", "reduced"]);
    assert_eq!(code(&out), 0, "the zero ring is reduced");
}

#[test]
fn json_check_carries_the_schema_and_the_verdict() {
    let out = ringlab(&[
        "--json",
        "check",
        "--ring",
        "U(2, Zmod(2))",
        "--property",
        "left_n_reflexive",
    ]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kind"], "check");
    assert_eq!(v["verdict"]["holds"], false);
    assert_eq!(v["verdict"]["order"], 8);
    assert!(v["verdict"]["witness"].is_object());
}

#[test]
fn malformed_expressions_exit_two() {
    let out = ringlab(&["check", "--ring", "Zmod(", "--property", "reduced"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error"));

    let out = ringlab(&["check", "--ring", "Zmod(4)", "--property", "no_such_thing"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown property"));
}

#[test]
fn matrix_json_is_byte_identical_across_runs() {
    let first = ringlab(&["--json", "matrix"]);
    let second = ringlab(&["--json", "matrix"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn matrix_keeps_going_past_entries_that_fail_to_build() {
    let mut cat = tempfile::NamedTempFile::new().unwrap();
    writeln!(cat, "Z2 = Zmod(2)").unwrap();
    writeln!(cat, "TOO_BIG = M(2, Zmod(5))").unwrap();
    writeln!(cat, "Z4 = Zmod(4)").unwrap();
    let out = ringlab(&["matrix", "--catalog", cat.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "one bad entry must not sink the run");
    let text = stdout(&out);
    assert!(text.contains("BUILD FAILED"));
    assert!(text.contains("Z4"), "later entries still decided");
}

#[test]
fn hunt_finds_a_separating_ring_or_says_so() {
    let out = ringlab(&["hunt", "--holds", "two_primal", "--fails", "left_n_reflexive"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("U2_Z2"));

    let out = ringlab(&[
        "hunt",
        "--holds",
        "left_n_reflexive",
        "--fails",
        "right_n_reflexive",
        "--random-tries",
        "4",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("no separating ring"));
}

#[test]
fn wordalg_orthogonality_is_one_sided_for_the_one_relator_pattern() {
    let rules = "letters x y; kill yx";
    let out = ringlab(&["wordalg", "--rules", rules, "--check", "xy * ? * x"]);
    assert_eq!(code(&out), 0, "xy·m·x dies for every middle");

    let out = ringlab(&["wordalg", "--rules", rules, "--check", "x * ? * xy"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("xxy"), "the surviving product is printed");
}

#[test]
fn wordalg_quotient_property_splits_the_two_conditions() {
    let rules = "letters x y; kill xxx yyy xy yxx yyx";
    let out = ringlab(&[
        "wordalg",
        "--rules",
        rules,
        "--quotient-property",
        "left_n_right_idempotent_reflexive",
    ]);
    assert_eq!(code(&out), 0);

    let out = ringlab(&["wordalg", "--rules", rules, "--quotient-property", "left_n_reflexive"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("order 64"));
}

#[test]
fn axioms_separates_law_violations_from_bad_files() {
    // mul[2][2] changed from 1 to 2: parses fine, breaks distributivity
    let broken = "ring BAD order 3\nadd\n0 1 2\n1 2 0\n2 0 1\nmul\n0 0 0\n0 1 2\n0 2 2\nzero 0\none 1\n";
    let mut tbl = tempfile::NamedTempFile::new().unwrap();
    tbl.write_all(broken.as_bytes()).unwrap();
    let out = ringlab(&["axioms", "--table", tbl.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not a ring"));

    let mut trunc = tempfile::NamedTempFile::new().unwrap();
    trunc.write_all(b"ring T order 2\nadd\n0 1\n1 0\n").unwrap();
    let out = ringlab(&["axioms", "--table", trunc.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2, "a truncated file is an error, not a verdict");
}

#[test]
fn axioms_summarizes_a_built_ring() {
    let out = ringlab(&["--json", "axioms", "--ring", "D(3, Zmod(2))"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["valid"], true);
    assert_eq!(v["order"], 16);
    assert_eq!(v["characteristic"], 2);
    assert_eq!(v["commutative"], false);
}

#[test]
fn implications_run_clean_over_the_default_catalog() {
    let out = ringlab(&["implications"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("clean"));
    assert!(!text.contains("FAIL"), "no suite line may fail:\n{text}");
}
