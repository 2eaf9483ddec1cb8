use std::path::Path;
use std::process::{Command, Output};

use alphadim::construct::EmbeddingResult;
use alphadim::graph::read_edge_list;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alphadim")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_star_writes_edges() {
    let out = run(&["generate", "--family", "star", "--n", "10"]);
    assert!(out.status.success());
    let g = read_edge_list(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!((g.n(), g.edge_count()), (10, 9));
}

#[test]
fn generate_round_trips_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let out = run(&["generate", "--family", "gnp", "--n", "15", "--p", "0.4", "--seed", "3", "--out", s(&path)]);
    assert!(out.status.success());
    let again = run(&["generate", "--family", "gnp", "--n", "15", "--p", "0.4", "--seed", "3"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), String::from_utf8(again.stdout).unwrap());
}

#[test]
fn analyze_embed_verify_chain() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let report = dir.path().join("report.json");
    let emb = dir.path().join("emb.json");
    let gen = run(&["generate", "--family", "two-cliques-matched", "--n", "10", "--out", s(&graph)]);
    assert!(gen.status.success());

    let an = run(&["analyze", s(&graph), "--alpha", "1.5", "--out", s(&report)]);
    assert!(an.status.success(), "{}", String::from_utf8_lossy(&an.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["alpha"], 1.5);
    assert!(json["lower_bounds"].as_array().is_some_and(|a| !a.is_empty()));

    let em = run(&["embed", s(&graph), "--construction", "prop6", "--alpha", "1.5", "--out", s(&emb)]);
    assert!(em.status.success(), "{}", String::from_utf8_lossy(&em.stderr));
    EmbeddingResult::from_json(&std::fs::read_to_string(&emb).unwrap()).unwrap();

    let ver = run(&["verify", s(&graph), s(&emb), "--alpha", "1.5"]);
    assert_eq!(ver.status.code(), Some(0));
}

#[test]
fn verify_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("p3.txt");
    let points = dir.path().join("p3.pts");
    assert!(run(&["generate", "--family", "path", "--n", "3", "--out", s(&graph)]).status.success());
    std::fs::write(&points, "3 1 2\n0\n1\n2\n").unwrap();
    let ok = run(&["verify", s(&graph), s(&points), "--alpha", "1.5", "--format", "points"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["verify", s(&graph), s(&points), "--alpha", "2.0", "--format", "points"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let missing = run(&["generate", "--family", "gnp", "--n", "5", "--seed", "1"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
    assert_eq!(run(&["analyze", "/nonexistent/graph", "--alpha", "1"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn experiment_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = run(&[
        "experiment", "--kind", "diameter2", "--n", "20", "--q", "0.5", "--trials", "20", "--seed", "4", "--out",
        s(&csv),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 21);
    assert!(text.starts_with("experiment,"));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(summary.to_string().contains("\"trials\":20"));
}
