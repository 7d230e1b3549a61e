//! Runs the built binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use supergrade::connections::{complete_depth, oracle_partition, SupportGraph};
use supergrade::corpus;

fn supergrade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supergrade")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("supergrade-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn decompose_exit_codes() {
    let o = supergrade(&["--command", "decompose", "--builtin", "ex3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("K1 gr-simple: dim 3"), "{out}");
    assert!(out.contains("K2 gr-simple: dim 3"), "{out}");

    let o = supergrade(&["--command", "decompose", "--builtin", "ex5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("z is central"));

    let o = supergrade(&["--command", "decompose", "--builtin", "case4", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["decompose"]["small_components"][0]["kind"], "small case 4 (n=2)");
}

#[test]
fn invalid_input_file_reports_a_jacobi_triple() {
    // [h,e] = 3e keeps the grading but breaks super Jacobi.
    let text = corpus::document("ex1").unwrap().replace(r#"[[1, "2"]]"#, r#"[[1, "3"]]"#);
    let p = scratch("broken-sl2.json", &text);
    let o = supergrade(&["--command", "report", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("Jacobi"), "{out}");

    let o = supergrade(&["--command", "validate", "--input", p.to_str().unwrap(), "--format", "structured"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let first = &v["validate"]["violations"][0];
    assert_eq!(first["kind"], "jacobi");
    assert_eq!(first["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_and_io_errors_exit_one() {
    assert_eq!(supergrade(&["--command", "validate", "--builtin", "ex9"]).status.code(), Some(1));
    assert_eq!(supergrade(&["--command", "validate", "--input", "/no/such/file.json"]).status.code(), Some(1));
    let p = scratch("truncated.json", "{\"group\": {\"free_rank\": 1,");
    let o = supergrade(&["--command", "validate", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(supergrade(&["--command", "validate"]).status.code(), Some(1));
    assert_eq!(supergrade(&["--command", "frobnicate", "--builtin", "ex1"]).status.code(), Some(1));
    assert_eq!(supergrade(&["--help"]).status.code(), Some(0));
}

#[test]
fn structured_connections_match_the_oracle() {
    for name in corpus::names() {
        let o = supergrade(&["--command", "connections", "--builtin", name, "--format", "structured"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        let alg = corpus::load(name).unwrap();
        let sg = SupportGraph::of_algebra(&alg);
        let oracle: Vec<Vec<Vec<i64>>> = oracle_partition(&sg, complete_depth(&sg))
            .unwrap()
            .iter()
            .map(|b| b.iter().map(|g| g.coords().to_vec()).collect())
            .collect();
        let classes: Vec<Vec<Vec<i64>>> = serde_json::from_value(v["connections"]["classes"].clone()).unwrap();
        assert_eq!(classes, oracle, "{name}");
        assert_eq!(v["connections"]["oracle"]["agrees"], true);
    }
}

#[test]
fn report_is_byte_identical() {
    for format in ["text", "structured"] {
        let a = supergrade(&["--command", "report", "--builtin", "ex2-ex1", "--format", format]);
        let b = supergrade(&["--command", "report", "--builtin", "ex2-ex1", "--format", format]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}
