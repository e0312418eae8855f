use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const T2F2: &str = r#"{"version":1,"factors":[2,2,2],"table":[[[1,0,0],[0,1,0],[0,0,0]],[[0,0,0],[0,0,0],[0,1,0]],[[0,0,0],[0,0,0],[0,0,1]]]}"#;

fn ringlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn t2_file(dir: &TempDir) -> std::path::PathBuf {
    let f = dir.path().join("t2.json");
    fs::write(&f, format!("{T2F2}\n")).unwrap();
    f
}

#[test]
fn make_ring_writes_the_canonical_file() {
    let o = ringlab(&["make-ring", "tri:2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), format!("{T2F2}\n"));
}

#[test]
fn ring_queries_on_the_two_by_two_triangular_ring() {
    let dir = TempDir::new().unwrap();
    let f = t2_file(&dir);
    let pr = stdout(&ringlab(&["pr", path(&f)]));
    assert!(
        pr.contains("pr 5/8\n") && pr.contains("pr_centralizer_sum 5/8\n"),
        "{pr}"
    );
    let cent = stdout(&ringlab(&["cent", path(&f)]));
    assert!(
        cent.starts_with("centralizers 4\ncenter_order 2\nindex 4\n"),
        "{cent}"
    );
    let q = stdout(&ringlab(&["quotient", path(&f)]));
    assert!(q.starts_with("quotient [2,2]\n"), "{q}");

    let j: Value =
        serde_json::from_str(&stdout(&ringlab(&["quotient", path(&f), "--json"]))).unwrap();
    assert_eq!(j["quotient"], serde_json::json!([2, 2]));
    assert_eq!(j["cyclic"], Value::Bool(false));
    let j: Value = serde_json::from_str(&stdout(&ringlab(&["pr", path(&f), "--json"]))).unwrap();
    assert_eq!(j["pr"], "5/8");
    let j: Value = serde_json::from_str(&stdout(&ringlab(&["cent", path(&f), "--json"]))).unwrap();
    assert_eq!(j["centralizers"], 4);
    assert_eq!(j["members"].as_array().unwrap().len(), 4);
}

#[test]
fn build_then_verify() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("c.jsonl");
    let report = dir.path().join("r.txt");
    let b = ringlab(&[
        "build-corpus",
        "--triangular",
        "2,3",
        "--enumerate-order",
        "4",
        "--enumerate-order",
        "8",
        "--workers",
        "2",
        "--out",
        path(&corpus),
    ]);
    assert!(b.status.success(), "{}", String::from_utf8_lossy(&b.stderr));

    let v = ringlab(&[
        "verify",
        "--corpus",
        path(&corpus),
        "--theorem",
        "T3",
        "--report",
        path(&report),
    ]);
    assert_eq!(v.status.code(), Some(0));
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("theorem T3 status=confirmed"), "{text}");

    let v = ringlab(&["verify", "--corpus", path(&corpus), "--json"]);
    // orders 1..3 and 5..7 are missing, so T7 cannot be evaluated
    assert_eq!(v.status.code(), Some(1));
    let j: Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert!(j.to_string().contains("T7"));
}

#[test]
fn worker_count_does_not_change_the_corpus() {
    let a = ringlab(&["build-corpus", "--enumerate-order", "8", "--dedup", "off"]);
    let b = ringlab(&[
        "build-corpus",
        "--enumerate-order",
        "8",
        "--dedup",
        "off",
        "--workers",
        "4",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn a_refuting_corpus_exits_two() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("c.jsonl");
    assert!(ringlab(&[
        "build-corpus",
        "--enumerate-group",
        "4,4",
        "--out",
        path(&corpus)
    ])
    .status
    .success());
    let v = ringlab(&["verify", "--corpus", path(&corpus), "--theorem", "T5"]);
    assert_eq!(v.status.code(), Some(2));
    assert!(stdout(&v).contains("status=refuted"));
}

#[test]
fn corrupted_corpus_exits_three() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("c.jsonl");
    let f = t2_file(&dir);
    assert!(ringlab(&[
        "build-corpus",
        "--from-file",
        path(&f),
        "--out",
        path(&corpus)
    ])
    .status
    .success());
    let text = fs::read_to_string(&corpus).unwrap();
    fs::write(
        &corpus,
        text.replace("[[[1,0,0],[0,1,0],[0,0,0]]", "[[[1,0,0],[0,1,0],[0,0,1]]"),
    )
    .unwrap();
    let v = ringlab(&["verify", "--corpus", path(&corpus)]);
    assert_eq!(v.status.code(), Some(3));
    assert!(v.stdout.is_empty());

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"version\":1,\"factors\":[2]}").unwrap();
    let b = ringlab(&["build-corpus", "--from-file", path(&bad)]);
    assert_eq!(b.status.code(), Some(3));
}

#[test]
fn unknown_theorem_is_an_error() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("c.jsonl");
    assert!(
        ringlab(&["build-corpus", "--triangular", "2", "--out", path(&corpus)])
            .status
            .success()
    );
    let v = ringlab(&["verify", "--corpus", path(&corpus), "--theorem", "T42"]);
    assert_eq!(v.status.code(), Some(1));
}
