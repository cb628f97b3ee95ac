use std::process::Command;

use greenseq_cli::presets::preset;
use greenseq_cli::QuiverFile;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_greenseq"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn write_quiver(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn enum_examples() {
    let (out, _, code) = run(&["enum", "--preset", "C2-paper"]);
    assert_eq!(code, 0);
    let seqs: Vec<&str> = out.lines().filter(|l| l.starts_with('(')).collect();
    assert_eq!(seqs, vec!["(1,2)", "(2,1,2,1)"]);

    let (out, _, code) = run(&["enum", "--preset", "A1"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "(1)"));

    let (out, _, _) = run(&["enum", "--preset", "A2"]);
    assert!(out.contains("lengths: 2:1 3:1"));
}

#[test]
fn enum_json() {
    let (out, _, code) = run(&["enum", "--preset", "B2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sequences"], serde_json::json!([[1, 2], [2, 1, 2, 1]]));
    assert_eq!(v["complete"], true);
}

#[test]
fn stability_flag_reports_incomplete() {
    let (out, _, code) = run(&[
        "enum",
        "--preset",
        "Atilde(2,1)",
        "--max-depth",
        "3",
        "--stability-check",
    ]);
    assert_eq!(code, 3);
    assert!(out.contains("MGS set changed"));
    let (_, err, code) = run(&["nogap", "--preset", "Atilde(2,1)", "--max-depth", "3"]);
    assert_eq!(code, 3);
    assert!(err.contains("incomplete"));
}

#[test]
fn nogap_verdicts() {
    assert_eq!(run(&["nogap", "--preset", "A2"]).2, 0);
    assert_eq!(
        run(&["nogap", "--preset", "Atilde(2,1)", "--max-depth", "12"]).2,
        0
    );
    let (out, _, code) = run(&["nogap", "--preset", "C2-paper"]);
    assert_eq!(code, 2);
    assert!(out.contains("lengths: {2,4}"));
}

#[test]
fn classes_verdicts() {
    let (out, _, code) = run(&["classes", "--preset", "C2-paper"]);
    assert_eq!(code, 0);
    assert!(out.contains("classes: 1"));
    let (out, _, code) = run(&["classes", "--preset", "A1"]);
    assert_eq!(code, 0);
    assert!(out.contains("class 1: size 1, representative (1)"));
    assert_eq!(
        run(&["classes", "--preset", "Atilde(2,1)", "--max-depth", "12"]).2,
        0
    );
}

#[test]
fn regular_verdicts() {
    let (out, _, code) = run(&["regular", "--preset", "Atilde(2,1)", "--max-depth", "12"]);
    assert_eq!(code, 0);
    assert!(out.contains("connected: yes"));
    assert!(out.contains("every MGS passes regular: yes"));
    let (out, _, code) = run(&["regular", "--preset", "kronecker"]);
    assert_eq!(code, 0);
    assert!(out.contains("note: infinite green paths exist"));
    assert_eq!(run(&["regular", "--preset", "C2-paper"]).2, 4);
    assert_eq!(run(&["regular", "--preset", "A3"]).2, 4);
}

#[test]
fn graph_node_counts() {
    for (name, nodes) in [("C2-paper", 6), ("A1", 2), ("A2", 5)] {
        let (out, _, code) = run(&["graph", "--preset", name]);
        assert_eq!(code, 0);
        assert_eq!(
            out.lines().filter(|l| l.contains("[label=\"[")).count(),
            nodes,
            "{name}"
        );
    }
    let (out, _, _) = run(&["graph", "--preset", "Atilde(2,1)", "--max-depth", "12"]);
    assert!(out.contains("regular=true"));
}

#[test]
fn graph_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let (out, _, code) = run(&["graph", "--preset", "A2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let dot = std::fs::read_to_string(path).unwrap();
    assert!(dot.starts_with("digraph exchange {"));
}

#[test]
fn presets_round_trip() {
    for name in [
        "A1",
        "A(4)",
        "C2-paper",
        "B2",
        "G2",
        "kronecker",
        "Atilde(2,1)",
        "Atilde(2,2)",
    ] {
        let (out, _, code) = run(&["preset", name]);
        assert_eq!(code, 0);
        let spec = QuiverFile::parse(&out).unwrap().to_spec().unwrap();
        assert_eq!(spec, preset(name).unwrap(), "{name}");
    }
    let (out, _, _) = run(&["preset", "C2-paper"]);
    let f = QuiverFile::parse(&out).unwrap();
    assert_eq!((f.d, f.b0), (vec![2, 1], vec![vec![0, -1], vec![2, 0]]));
    let (out, _, _) = run(&["preset", "kronecker"]);
    let f = QuiverFile::parse(&out).unwrap();
    assert_eq!((f.d, f.b0), (vec![1, 1], vec![vec![0, 2], vec![-2, 0]]));
    assert_eq!(run(&["preset", "E8"]).2, 1);
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_quiver(&dir, "bad.json", r#"{"n":2,"d":[1,1],"b0":[[0,1],[1,0]]}"#);
    let (_, err, code) = run(&["enum", &bad]);
    assert_eq!(code, 1);
    assert!(err.contains("invalid quiver"));
    let junk = write_quiver(&dir, "junk.json", "not json");
    assert_eq!(run(&["enum", &junk]).2, 1);
    assert_eq!(run(&["enum", "/nonexistent/q.json"]).2, 1);
    assert_eq!(run(&["enum", "--preset", "A3", "--max-depth", "2"]).2, 1);
}

#[test]
fn file_input_with_euler_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_quiver(
        &dir,
        "c2.json",
        r#"{"n":2,"d":[2,1],"b0":[[0,-1],[2,0]],"e":[[2,0],[-2,1]]}"#,
    );
    let (out, _, code) = run(&["enum", &f]);
    assert_eq!(code, 0);
    assert!(out.contains("(2,1,2,1)"));
    let wrong = write_quiver(
        &dir,
        "c2e.json",
        r#"{"n":2,"d":[2,1],"b0":[[0,-1],[2,0]],"e":[[2,-2],[0,1]]}"#,
    );
    assert_eq!(run(&["enum", &wrong]).2, 1);
}
