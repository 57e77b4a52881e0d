use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indicolor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn gen_emits_graph6_and_json() {
    let o = run(&["gen", "family", "C", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "Dhc");
    let v = json(&["gen", "--format", "json", "product", "P2", "P2"]);
    assert_eq!(v["n"], 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    let v = json(&["gen", "--format", "json", "expansion", "complete", "P3", "2,2,2"]);
    assert_eq!(v["n"], 6);
    assert!(!run(&["gen", "family", "Q", "3"]).status.success());
}

#[test]
fn params_of_c5() {
    let v = json(&["params", "C5"]);
    assert_eq!((v["delta"].as_u64(), v["Delta"].as_u64()), (Some(2), Some(2)));
    assert_eq!((v["omega"].as_u64(), v["chi"].as_u64(), v["col"].as_u64()), (Some(2), Some(3), Some(3)));
    // graph6 input gives the same answer
    assert_eq!(json(&["params", "Dhc"]), v);
}

#[test]
fn graph_from_json_file() {
    let dir = std::env::temp_dir().join(format!("indicolor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p3.json");
    std::fs::write(&path, r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
    let v = json(&["params", path.to_str().unwrap()]);
    assert_eq!(v["col"], 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn chi_i_reports_winning_set() {
    let v = json(&["chi-i", "P4"]);
    assert_eq!(v["chi_i"], 2);
    let v = json(&["chi-i", "K[P3](2,2,2)", "--kmax", "6"]);
    assert_eq!(v["chi_i"], 4);
    assert_eq!(v["winning_set"], serde_json::json!([4, 5, 6]));
}

#[test]
fn play_prints_transcript() {
    let v = json(&["play", "P3", "-k", "2", "--ann", "optimal", "--ben", "optimal"]);
    assert_eq!(v["outcome"], "ann");
    assert_eq!(v["moves"].as_array().unwrap().len(), 3);
    let v = json(&["play", "P2[P2]", "-k", "4", "--ann", "product-col", "--ben", "optimal", "--factors", "P2", "P2"]);
    assert_eq!(v["outcome"], "ann");
    let o = run(&["play", "P3", "-k", "2", "--ann", "product-col"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("factors"));
}

#[test]
fn recognize_reports_classes_and_family() {
    let v = json(&["recognize", "C5"]);
    assert_eq!(v["classes"]["tags"]["bipartite"]["holds"], false);
    assert_eq!(v["family"]["admitted"], true);
}

#[test]
fn verify_csv_is_byte_stable() {
    let args = ["verify", "bipartite-expansion", "--format", "csv", "--stable"];
    let a = run(&args);
    assert!(a.status.success());
    let text = stdout(&a);
    assert!(text.starts_with("suite,case,expected,observed,status,millis\n"));
    assert_eq!(text, stdout(&run(&args)));
}

#[test]
fn verify_with_corpus_and_failures() {
    let dir = std::env::temp_dir().join(format!("indicolor-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "# pairs\nP2; P2\n").unwrap();
    let v = json(&["verify", "col-bound", "--corpus", good.to_str().unwrap()]);
    assert_eq!(v["summary"]["pass"], 1);
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "P2; ???\n").unwrap();
    assert_eq!(run(&["verify", "col-bound", "--corpus", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}
