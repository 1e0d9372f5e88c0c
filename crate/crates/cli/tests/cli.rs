use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn freearr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freearr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn charpoly_of_a2_prints_both_forms() {
    let o = freearr(&["charpoly", "weyl:A2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("chi = (t-1)(t-2) = t^2 - 3t + 2\n"));
    assert!(stdout(&o).contains("codim 2  {0,1,2}  mu = 2"));
}

#[test]
fn charpoly_of_an_empty_arrangement() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("empty.txt");
    fs::write(&f, "dim 3\n").unwrap();
    let o = freearr(&["--quiet", "charpoly", path(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "chi = t^3\npi = 1\n");
}

#[test]
fn wrong_arity_cites_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    fs::write(&f, "dim 2\n1 0\n1 2 3\n").unwrap();
    let o = freearr(&["charpoly", path(&f)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn non_free_chi_is_printed_expanded_only() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("generic.txt");
    fs::write(&f, "dim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n").unwrap();
    let o = freearr(&["--quiet", "charpoly", path(&f)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("chi = t^3 - 4t^2 + 6t - 3\n"));
    let o = freearr(&["solve", path(&f)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("NOT FREE"));
}

#[test]
fn solve_reports_exponents_and_basis() {
    let o = freearr(&["solve", "cat:A1:k=1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("FREE exp=(1,3)\n"));
    assert!(out.contains("theta_1 = (x, y)"));
    let o = freearr(&["--quiet", "solve", "weyl:A2"]);
    assert_eq!(stdout(&o), "FREE exp=(1,2)\n");
}

#[test]
fn zero_bound_is_unknown() {
    let o = freearr(&["solve", "weyl:A2", "--bound", "0"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("UNKNOWN"));
}

#[test]
fn certify_catalan_and_replay_on_a_permuted_copy() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cat.json");
    let o = freearr(&["certify-catalan", "A2", "--k", "1", "--out", path(&cert)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("stage 1: add a2 a1  counts (3,3)  exp=(1,4,4)"));
    assert!(out.contains("stage 2: add a1+a2  counts (4)  exp=(1,4,5)"));
    assert!(out.ends_with("FREE Cat^1(A2) exp=(1,4,5)\n"));

    let o = freearr(&["replay", "cat:A2:k=1", path(&cert)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "ACCEPT exp=(1,4,5)\n");

    // (x, y, z) -> (z, x, y) on every normal
    let family = stdout(&freearr(&["family", "cat:A2:k=1"]));
    let mut rotated = String::new();
    for line in family.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() == 3 && !line.starts_with('#') {
            rotated.push_str(&format!("{} {} {}\n", parts[1], parts[2], parts[0]));
        } else {
            rotated.push_str(line);
            rotated.push('\n');
        }
    }
    assert_ne!(rotated, family);
    let copy = dir.path().join("rotated.txt");
    fs::write(&copy, rotated).unwrap();
    let o = freearr(&["replay", path(&copy), path(&cert)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn tampered_exponents_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cat.json");
    assert_eq!(
        code(&freearr(&["--quiet", "certify-catalan", "A1", "--out", path(&cert)])),
        0
    );
    let text = fs::read_to_string(&cert).unwrap();
    let tampered = text.replacen(
        "\"after\": [\n        1,\n        3",
        "\"after\": [\n        1,\n        4",
        1,
    );
    assert_ne!(tampered, text);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, tampered).unwrap();
    let o = freearr(&["replay", "cat:A1:k=1", path(&bad)]);
    assert_eq!(code(&o), 5);
    assert!(stdout(&o).starts_with("REJECT step 0: MAT2"));
}

#[test]
fn certificate_schema_violation_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"dim\": 2}").unwrap();
    assert_eq!(code(&freearr(&["replay", "cat:A1:k=1", path(&bad)])), 2);
}

#[test]
fn supplied_seed_needs_trust_on_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cat.json");
    let o = freearr(&["certify-catalan", "B2", "--trust-seed", "1,4,4", "--out", path(&cert)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("exp=(1,5,7)\n"));
    assert_eq!(code(&freearr(&["replay", "cat:B2:k=1", path(&cert)])), 5);
    assert_eq!(
        code(&freearr(&["replay", "cat:B2:k=1", path(&cert), "--trust-seed"])),
        0
    );
}

#[test]
fn unsupported_and_malformed_families() {
    assert_eq!(code(&freearr(&["certify-catalan", "E8"])), 4);
    assert_eq!(code(&freearr(&["charpoly", "cat:E6:k=1"])), 4);
    assert_eq!(code(&freearr(&["charpoly", "cat:A2:k=x"])), 2);
    assert_eq!(code(&freearr(&["charpoly", "no-such-file.txt"])), 2);
    assert_eq!(code(&freearr(&["frobnicate"])), 2);
}

#[test]
fn family_text_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("shi.txt");
    assert_eq!(code(&freearr(&["family", "shi:B2:k=1", "--out", path(&f)])), 0);
    let first = fs::read_to_string(&f).unwrap();
    assert!(first.starts_with("# shi:B2:k=1\ndim 3\n"));
    let o = freearr(&["--quiet", "solve", path(&f)]);
    assert_eq!(stdout(&o), "FREE exp=(1,4,4)\n");
}

#[test]
fn check_verbs() {
    let o = freearr(&["check", "mat2", "shi:A1:k=1", "--exp", "1,2", "--add", "1,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "MAT2 exp (1,2) -> (1,3)\n");

    let o = freearr(&["check", "mdt", "cat:A1:k=1", "--exp", "1,3", "--delete", "1,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "MDT exp (1,3) -> (1,2)\n");

    let o = freearr(&["check", "mat2", "shi:A2:k=1", "--exp", "1,3,3", "--add", "1,2,3"]);
    assert_eq!(code(&o), 5);

    let o = freearr(&["check", "mrt", "cat:A2:k=1", "--exp", "1,4,5", "--flat", "0,0,1"]);
    assert_eq!(code(&o), 5);
    assert!(stdout(&o).starts_with("REFUTED |A^X| = 3"));

    let dir = tempfile::tempdir().unwrap();
    let step = dir.path().join("step.json");
    let o = freearr(&[
        "check",
        "ad",
        "weyl:A2",
        "--hyperplane",
        "1,1",
        "--full",
        "1,2",
        "--restriction",
        "1",
        "--out",
        path(&step),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "AdditionDeletion exp (1,2) -> (1,1)\n");
    assert!(fs::read_to_string(&step).unwrap().contains("\"restriction_exponents\""));

    let o = freearr(&["check", "mat", "weyl:A2", "--exp", "1,3", "--add", "1,-1"]);
    assert_eq!(code(&o), 2);
}
