use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_antimagic"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .expect("stdin")
        .write_all(stdin.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("binary exits")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write fixture");
    path.to_str().expect("utf-8 path").to_owned()
}

fn gen(kind: &str, n: &str) -> String {
    let out = run(&["gen", kind, n], "");
    assert!(out.status.success());
    stdout(&out)
}

#[test]
fn gen_cycle_into_oriented_solve() {
    let out = run(&["solve", "--variant", "oriented"], &gen("cycle", "5"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["variant"], "oriented");
    assert_eq!(doc["k"], 3);
    assert_eq!(doc["labels"].as_object().unwrap().len(), 5);
    assert_eq!(doc["orientation"].as_object().unwrap().len(), 5);
    assert_eq!(doc["report"]["ok"], true);
}

#[test]
fn certify_undirected_range() {
    let out = run(&["certify", "--mode", "undirected", "--n", "4..14"], "");
    assert_eq!(out.status.code(), Some(0));
    let certs: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let certs = certs.as_array().unwrap();
    assert_eq!(certs.len(), 11);
    for (c, n) in certs.iter().zip(4..) {
        assert_eq!(c["mode"], "undirected");
        assert_eq!(c["n"], n);
        assert_eq!(c["nonzero"], true);
        assert_ne!(c["coefficient"], "0");
    }
}

#[test]
fn certify_rejects_bad_range() {
    assert_eq!(run(&["certify", "--n-range", "3..5"], "").status.code(), Some(2));
    assert_eq!(run(&["certify", "--n-range", "x"], "").status.code(), Some(2));
}

#[test]
fn verify_flags_duplicate_label() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "p3.txt", "1 2\n2 3\n");
    let out = run(&["verify", "--graph", &graph], r#"{"labels": {"1-2": "4", "2-3": "4"}}"#);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["ok"], false);
    assert!(report["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v["kind"] == "duplicate-label"));
}

#[test]
fn solve_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, n) in [("complete", "5"), ("wheel", "6"), ("star", "5"), ("path", "2")] {
        let graph = write(dir.path(), "g.txt", &gen(kind, n));
        for extra in [&["--variant", "oriented"][..], &["--seed", "7"], &[]] {
            let mut args = vec!["solve", graph.as_str()];
            args.extend_from_slice(extra);
            let solved = run(&args, "");
            assert_eq!(solved.status.code(), Some(0), "{kind} {n} {extra:?}");
            let checked = run(&["verify", "--graph", &graph], &stdout(&solved));
            assert_eq!(checked.status.code(), Some(0), "{kind} {n} {extra:?}: {}", stdout(&checked));
        }
    }
}

#[test]
fn sampled_instance_is_echoed() {
    let out = run(&["solve", "--seed", "1"], &gen("cycle", "4"));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["weights"].as_object().unwrap().len(), 4);
    assert_eq!(doc["lists"].as_object().unwrap().len(), 4);
}

#[test]
fn explicit_weights_and_lists() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "k2.txt", "1 2\n");
    let weights = write(dir.path(), "w.json", r#"{"weights": {"1": "1/2", "2": "-3"}}"#);
    let lists = write(dir.path(), "l.json", r#"{"lists": {"1-2": ["-1/3", "5", "7"]}}"#);
    let out = run(&["solve", &graph, "--weights", &weights, "--lists", &lists], "");
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let label = doc["labels"]["1-2"].as_str().unwrap();
    assert!(["-1/3", "5", "7"].contains(&label));
}

#[test]
fn deterministic_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", &gen("wheel", "7"));
    let b = write(dir.path(), "b.txt", &gen("complete", "5"));
    let c = write(dir.path(), "c.txt", &gen("cycle", "6"));
    let args = ["solve", &a, &b, &c, "--seed", "42", "--trace"];
    let first = run(&args, "");
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&run(&args, "")));
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "3"]);
    assert_eq!(stdout(&first), stdout(&run(&parallel, "")));
}

#[test]
fn csv_rows_follow_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let names: Vec<String> = ["6", "4", "5"]
        .iter()
        .map(|n| write(dir.path(), &format!("c{n}.txt"), &gen("cycle", n)))
        .collect();
    let mut args = vec!["solve", "--format", "csv", "--jobs", "3"];
    args.extend(names.iter().map(String::as_str));
    let out = run(&args, "");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "input,n,m,variant,k,status,error");
    for (line, name) in lines[1..].iter().zip(&names) {
        assert!(line.starts_with(name.as_str()), "{line}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["solve"], "1 x\n").status.code(), Some(2));
    assert_eq!(run(&["solve", "/nonexistent/graph.txt"], "").status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "k2.txt", "1 2\n");
    assert_eq!(run(&["verify", "--graph", &graph], "not json").status.code(), Some(2));
}

#[test]
fn oracle_and_sweep() {
    let out = run(&["oracle", "--variant", "antimagic", "--count"], &gen("path", "3"));
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["answer"]["count"], "2");

    let out = run(&["oracle", "--variant", "antimagic", "--k", "3"], "1 2\n");
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["answer"]["exists"], false);

    let out = run(&["oracle", "--cap", "10"], &gen("complete", "5"));
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["sweep", "--variant", "quasi-oriented", "--format", "csv"], &gen("cycle", "5"));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[7], "0");
}
