use std::io::Write;
use std::process::Command;

use polyprod::cli::{run_args, RunOutput, EXIT_INPUT, SCHEMA};
use serde_json::Value;

fn run(args: &[&str]) -> RunOutput {
    run_args(std::iter::once("polyprod").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.status, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn homology_of_the_square() {
    let v = json(&["homology", "@square", "--pair", "disk-sphere:1"]);
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["command"], "homology");
    assert_eq!(v["betti"], serde_json::json!([1, 0, 0, 2, 0, 0, 1]));
    let text = run(&["homology", "@square", "--pair", "disk-sphere:1"]);
    assert!(text.stdout.contains("betti: 1 0 0 2 0 0 1"), "{}", text.stdout);
    let tsv = run(&["--tsv", "homology", "@square", "--pair", "disk-sphere:1"]);
    assert!(tsv.stdout.starts_with("degree\tbetti\ttorsion\n"));
    assert!(tsv.stdout.contains("3\t2\t\n"));
}

#[test]
fn complex_files_in_both_formats() {
    let text = temp_file("# square\nm 4\nface 1 2\nface 2 3\nface 3 4\nface 4 1\n");
    let js = temp_file(r#"{"m": 4, "maximal_faces": [[1, 2], [2, 3], [3, 4], [1, 4]]}"#);
    for f in [&text, &js] {
        let path = f.path().to_str().unwrap();
        let v = json(&["validate", path]);
        assert_eq!(v["f_vector"], serde_json::json!([4, 4]));
        assert_eq!(v["valid"], true);
    }
}

#[test]
fn parse_errors_name_file_and_line() {
    let bad = temp_file("m 3\nface 1 2\nface 1 5\n");
    let path = bad.path().to_str().unwrap();
    let out = run(&["validate", path]);
    assert_eq!(out.status, EXIT_INPUT);
    assert_eq!(out.stderr, format!("error: {path}:3: vertex 5 out of range 1..=3\n"));
    let missing = run(&["validate", "/nonexistent/complex.txt"]);
    assert_eq!(missing.status, EXIT_INPUT);
    assert!(run(&["validate", "@nope"]).stderr.contains("unknown catalog complex"));
}

#[test]
fn strict_mode_rejects_ghost_vertices() {
    let ghost = temp_file("m 3\nface 1 2\n");
    let path = ghost.path().to_str().unwrap();
    assert_eq!(run(&["validate", path]).status, 0);
    let strict = run(&["--strict", "validate", path]);
    assert_eq!(strict.status, EXIT_INPUT);
    assert!(strict.stdout.contains("GhostVertex(3)"));
    let h = run(&["--strict", "homology", path, "--pair", "disk-sphere:1"]);
    assert_eq!(h.status, EXIT_INPUT);
    assert!(h.stderr.contains("GhostVertex(3)"), "{}", h.stderr);
}

#[test]
fn verification_commands() {
    let split = json(&["split", "@square", "--pair", "disk-sphere:1"]);
    assert_eq!(split["verified"], true);
    let hochster = json(&["hochster", "@rp2", "--verify"]);
    assert_eq!(hochster["verified"], true);
    let plain = json(&["hochster", "@rp2"]);
    assert!(plain.get("verified").is_none());
    let wedge = json(&["wedge-lemma", "@boundary:3", "--pair", "cone-rp2"]);
    assert_eq!(wedge["verified"], true);
    let porter = json(&["porter", "--m", "4", "--q", "0", "--verify"]);
    assert_eq!(porter["verified"], true);
    assert!(porter["note"].as_str().unwrap().contains("C(|I|-1, q+1)"));
    assert_eq!(
        porter["spheres"],
        serde_json::json!([
            {"dimension": 3, "multiplicity": 6},
            {"dimension": 4, "multiplicity": 8},
            {"dimension": 5, "multiplicity": 3}
        ])
    );
    let dj = json(&["dj-check", "@polygon:5"]);
    assert_eq!(dj["verified"], true);
}

#[test]
fn oversized_and_malformed_inputs_fail_cleanly() {
    let out = run(&["--budget", "50", "homology", "@simplex:5", "--pair", "disk-sphere:1"]);
    assert_eq!(out.status, EXIT_INPUT);
    assert!(out.stderr.contains("over the budget of 50"), "{}", out.stderr);
    let arity = run(&["split", "@square", "--pair", "disk-sphere:1", "--pair", "disk-sphere:2"]);
    assert_eq!(arity.status, EXIT_INPUT);
    assert!(arity.stderr.contains("expected 4 pair models, got 2"));
    assert_eq!(run(&["split", "@square"]).status, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).status, EXIT_INPUT);
    assert_eq!(run(&["--help"]).status, 0);
}

#[test]
fn series_commands() {
    let p = json(&["poincare", "@boundary:3", "--px", "0,1", "--trunc", "4"]);
    assert_eq!(p["series"]["expansion"], serde_json::json!([0, 3, 3, 0]));
    let sr = json(&["sr", "@square", "--trunc", "5"]);
    assert_eq!(sr["relations"], serde_json::json!(["x1x3", "x2x4"]));
    assert_eq!(sr["hilbert_series"]["expansion"], serde_json::json!([1, 0, 4, 0, 8]));
    let negative = run(&["poincare", "@square", "--px", "1,-1"]);
    assert_eq!(negative.status, EXIT_INPUT);
}

#[test]
fn toric_command() {
    let lam = temp_file("1 0\n0 1\n-1 -1\n");
    let v = json(&["toric", "@boundary:3", "--lambda", lam.path().to_str().unwrap()]);
    assert_eq!(v["betti"], serde_json::json!([1, 0, 1, 0, 1]));
    assert_eq!(v["kernel"]["rank"], 1);
    let bad = temp_file("1 0\n0 1\n-1 -2\n");
    let out = run(&["toric", "@boundary:3", "--lambda", bad.path().to_str().unwrap()]);
    assert_eq!(out.status, EXIT_INPUT);
    assert!(out.stderr.contains("{1,3}"), "{}", out.stderr);
}

#[test]
fn shifted_command() {
    let v = json(&["shifted", "@points:4"]);
    assert_eq!(v["shifted"]["verdict"], "Shifted");
    assert_eq!(
        v["suspension_spheres"][0],
        serde_json::json!({"dimension": 4, "multiplicity": 6})
    );
    let sq = json(&["shifted", "@square"]);
    assert_eq!(sq["shifted"]["verdict"], "NotShifted");
    assert!(sq.get("suspension_spheres").is_none());
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["split", "@rp2", "--pair", "disk-sphere:1"];
    let one = run(&[&["--jobs", "1"][..], &args].concat());
    let four = run(&[&["--jobs", "4"][..], &args].concat());
    assert_eq!(one.status, 0);
    assert_eq!(one, four);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_polyprod");
    let ok = Command::new(bin)
        .args(["homology", "@square", "--pair", "disk-sphere:1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("betti: 1 0 0 2 0 0 1"));
    let bad = Command::new(bin).args(["validate", "@nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}
