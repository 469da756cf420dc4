use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", "corpus", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn bq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bq"))
        .args(args)
        .output()
        .expect("bq runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

#[test]
fn validate() {
    let o = bq(&["validate", &corpus("a4_glue.quiver")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("string algebra: true"));

    let o = bq(&["validate", &corpus("triangle_aus.quiver")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("violation"));

    let o = bq(&["--json", "validate", &corpus("a3.quiver")]);
    assert_eq!(json(&o)["admissible"], true);
}

#[test]
fn strings_and_bands() {
    let o = bq(&["strings", &corpus("a3.quiver")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 6);

    let o = bq(&["--json", "strings", &corpus("kronecker.quiver")]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["truncated"], true);

    let o = bq(&["bands", &corpus("kronecker.quiver")]);
    assert_eq!(stdout(&o), "a b^-1\n");

    let o = bq(&["--json", "bands", &corpus("a4.quiver")]);
    assert_eq!(json(&o)["count"], 0);
}

#[test]
fn indecomposables() {
    let o = bq(&["indec", &corpus("a4.quiver")]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "10"));

    let o = bq(&["--json", "indec", &corpus("d5.quiver")]);
    assert_eq!(json(&o)["count"], 13);

    let o = bq(&["--json", "--cutoff", "40", "indec", &corpus("kronecker.quiver")]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["rep_infinite_suspected"], true);
    assert_eq!(json(&o)["explored"], 41);
}

#[test]
fn ar_quiver_dot() {
    let o = bq(&["ar", &corpus("a2.quiver")]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 3);
    assert_eq!(dot.matches("style=dashed").count(), 1);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a3.dot");
    let o = bq(&["--dot", path.to_str().unwrap(), "ar", &corpus("a3.quiver")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("6 modules"));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("digraph"));
}

#[test]
fn auslander_output_parses() {
    let o = bq(&["auslander", &corpus("a2.quiver")]);
    assert_eq!(code(&o), 0);
    let p = boundquiver::parse_presentation(&stdout(&o)).unwrap();
    assert_eq!((p.num_vertices(), p.quiver.num_arrows(), p.relations.len()), (3, 2, 1));

    let o = bq(&["auslander", &corpus("kronecker.quiver"), "--cutoff", "20"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn constructions() {
    let o = bq(&["--truncate", "8", "tensor", &corpus("a2.quiver"), &corpus("a2.quiver")]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("dimension: 9"));

    let o = bq(&["envelope", &corpus("a3.quiver")]);
    let p = boundquiver::parse_presentation(&stdout(&o)).unwrap();
    assert_eq!((p.num_vertices(), p.quiver.num_arrows(), p.relations.len()), (9, 12, 4));

    let o = bq(&["glue", &corpus("a4_glue.quiver"), "--pair", "2:4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("relation: c b"));

    // The supplement makes the result infinite-dimensional.
    let o = bq(&[
        "--truncate",
        "3",
        "glue",
        &corpus("a4_glue.quiver"),
        "--pair",
        "2:4",
        "--supplement",
        "2",
    ]);
    assert_eq!(code(&o), 2);
    assert!(!stdout(&o).contains("relation:"));
    assert!(stderr(&o).contains("truncated at degree 3"));

    let o = bq(&["glue", &corpus("a3.quiver"), "--pair", "2"]);
    assert_eq!(code(&o), 3);

    let o = bq(&[
        "--truncate",
        "8",
        "quotient",
        &corpus("a3.quiver"),
        "--relation",
        "a1 a2",
    ]);
    assert!(stderr(&o).contains("dimension: 5"));

    let o = bq(&["quotient", &corpus("a3.quiver"), "--delete", "2"]);
    let p = boundquiver::parse_presentation(&stdout(&o)).unwrap();
    assert_eq!((p.num_vertices(), p.quiver.num_arrows()), (2, 0));
}

#[test]
fn isomorphism_exit_codes() {
    let o = bq(&["iso", &corpus("a3.quiver"), &corpus("a3.quiver")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("a1"));

    let o = bq(&["--json", "iso", &corpus("a3.quiver"), &corpus("a3.quiver")]);
    assert_eq!(code(&o), 0);
    assert!(json(&o).is_object());

    let o = bq(&["iso", &corpus("a3.quiver"), &corpus("a3_rad2.quiver")]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "none\n"));
}

#[test]
fn check_paper_targets() {
    let o = bq(&["check-paper", "a_n", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));

    let o = bq(&["--json", "check-paper", "fig5-family"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o).as_array().unwrap().iter().all(|r| r["pass"] == true));

    // The seven-relation list fails; see the README.
    let o = bq(&["check-paper", "sec5-1"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("FAIL")).count(), 1);

    assert_eq!(code(&bq(&["check-paper", "a_n"])), 3);
    assert_eq!(code(&bq(&["check-paper", "d_n", "--n", "9"])), 3);
    assert_eq!(code(&bq(&["check-paper", "e_n"])), 3);
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.quiver");
    std::fs::write(&bad, "vertices: 1 2\narrow: a 1 3\n").unwrap();
    let o = bq(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("bad.quiver"));

    assert_eq!(code(&bq(&["validate", "/nonexistent.quiver"])), 3);
    assert_eq!(code(&bq(&["frobnicate"])), 3);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("strings.txt");
    let o = bq(&["-o", out.to_str().unwrap(), "strings", &corpus("a2.quiver")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 3);
}
