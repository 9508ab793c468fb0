//! End-to-end checks of the `tspace` binary: exit codes, diagnostics,
//! canonical formatting, and report determinism.

use std::path::Path;
use std::process::{Command, Output};

fn tspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const SIGN: &str = r#"
group T { elements: +1 -1 ; table: +1 +1 -1 -1 ; discrete }
space X { points: -1 0 1 ; discrete }
action A : T on X {
  +1 -1 -> 1   +1 0 -> 0   +1 1 -> 1
  -1 -1 -> -1  -1 0 -> 0   -1 1 -> -1
}
map neg : X -> X { -1 -> 1  0 -> 0  1 -> -1 }
map idm : X -> X { -1 -> -1  0 -> 0  1 -> 1 }
"#;

#[test]
fn validate_accepts_the_sign_instance() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "sign.tsp", SIGN);
    let out = tspace(&["validate", &file]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("action A: valid"));
}

#[test]
fn validate_reports_parse_diagnostics_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "missing.tsp",
        "group G { elements: t0 ; table: t0 ; discrete }\n\
         space X { points: x0 x1 ; discrete }\n\
         action A : G on X { t0 x0 -> x1 }\n",
    );
    let out = tspace(&["validate", &file]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("missing pair (t0, x1)"), "{stderr}");
}

#[test]
fn validate_reports_math_violations_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "null.tsp",
        "group G { elements: a b ; table: a a a a ; discrete }\n",
    );
    let out = tspace(&["validate", &file]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("violation"), "{stdout}");
}

#[test]
fn non_topology_opens_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "bad.tsp",
        "space X { points: a b ; opens: {} {a} {b} }\n",
    );
    let out = tspace(&["validate", &file]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("not a topology"), "{stderr}");
}

#[test]
fn classify_prints_the_sign_profile() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "sign.tsp", SIGN);
    let out = tspace(&["classify", &file, "--action", "A"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("transitive: false"));
    assert!(stdout.contains("singular set: {0}"));
}

#[test]
fn quotient_emits_a_reusable_space_block() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "sign.tsp", SIGN);
    let emitted = dir.path().join("quotient.tsp");
    let out = tspace(&[
        "quotient",
        &file,
        "--action",
        "A",
        "--emit",
        emitted.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&emitted).unwrap();
    assert!(text.contains("space Q"));
    // the emitted block is itself a valid document
    let out = tspace(&["validate", emitted.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dynamics_exit_code_tracks_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "sign.tsp", SIGN);
    let out = tspace(&["dynamics", &file, "--action", "A", "--map", "idm", "--check", "transitive"]);
    assert_eq!(out.status.code(), Some(1), "identity is not transitive on 3 discrete points");
    let out = tspace(&["dynamics", &file, "--action", "A", "--map", "idm", "--check", "dense-orbit"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn equivariance_profile_of_negation() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "sign.tsp", SIGN);
    let out = tspace(&["equivariance", &file, "--from", "A", "--to", "A", "--map", "neg"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("equivariant: false"));
    assert!(stdout.contains("pseudoequivariant: true"));
}

#[test]
fn conjugacy_identity_pair() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "sign.tsp", SIGN);
    let out = tspace(&[
        "conjugacy", &file, "--f", "idm", "--g", "idm", "--h", "idm", "--from", "A", "--to", "A",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn laws_single_law_exit_0() {
    let out = tspace(&["laws", "--law", "L3", "--max-group-order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("L3: Verified"));
}

#[test]
fn laws_unknown_id_exit_2() {
    let out = tspace(&["laws", "--law", "L99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fmt_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "sign.tsp", SIGN);
    let once = tspace(&["fmt", &file]);
    assert_eq!(once.status.code(), Some(0));
    let text1 = String::from_utf8(once.stdout).unwrap();
    let file2 = write(dir.path(), "sign-canonical.tsp", &text1);
    let twice = tspace(&["fmt", &file2]);
    let text2 = String::from_utf8(twice.stdout).unwrap();
    assert_eq!(text1, text2);
}

#[test]
fn search_writes_a_replayable_witness_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = tspace(&["search", "--goal", "t-transitive-not-transitive", "--max-space-size", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    // the serialized part starts at the first declaration
    let doc_start = stdout.find("group ").expect("witness document");
    let file = write(dir.path(), "witness.tsp", &stdout[doc_start..]);
    let out = tspace(&["validate", &file]);
    assert_eq!(out.status.code(), Some(0), "witness replays through validate");
}
