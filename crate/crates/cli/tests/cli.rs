use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn jordeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jordeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = jordeg(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)));
    (code(&o), v)
}

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn record<'a>(v: &'a Value, item: &str) -> &'a Value {
    v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["item"] == item)
        .unwrap_or_else(|| panic!("no record {item}"))
}

#[test]
fn check_accepts_unicode_labels() {
    let o = jordeg(&["check", "𝕋₀₂"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS      T02 Jordan identity"));
}

#[test]
fn check_reports_the_violating_quadruple() {
    let (c, v) = json(&["check", &data("examples/non_jordan.json")]);
    assert_eq!(c, 1);
    assert_eq!(v["payload"]["commutative"], true);
    assert_eq!(v["payload"]["jordan"], false);
    let q = &v["payload"]["violation"];
    assert_eq!([&q["a"], &q["b"], &q["c"], &q["y"]], ["a", "a", "a", "a"]);
    assert_eq!(q["value"], serde_json::json!(["0", "3"]));
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("jordeg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2,").unwrap();
    assert_eq!(code(&jordeg(&["check", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&jordeg(&["check", "T99"])), 2);
    assert_eq!(code(&jordeg(&["graph", "dim4"])), 2);
    assert_eq!(code(&jordeg(&["frobnicate"])), 2);
    assert_eq!(code(&jordeg(&["verify-all", "marginal", "5..3"])), 2);
    assert_eq!(code(&jordeg(&["verify-deg", "T03"])), 2);
}

#[test]
fn invariants_cross_check_published_values() {
    let (c, v) = json(&["invariants", "T08"]);
    assert_eq!(c, 0);
    assert_eq!(v["payload"]["invariants"]["der"], 4);
    assert_eq!(v["payload"]["invariants"]["rad"], 2);
    let (c, v) = json(&["invariants", "𝔍₆"]);
    assert_eq!(c, 0);
    assert_eq!(v["payload"]["invariants"]["der"], 30);
    assert_eq!(v["payload"]["invariants"]["h2"], 0);
    let (c, v) = json(&["invariants", "ℂ³"]);
    assert_eq!(c, 0);
    assert_eq!(v["payload"]["invariants"]["der"], 9);
    assert_eq!(v["payload"]["invariants"]["rad"], 3);
}

#[test]
fn invariants_flag_a_relabelled_algebra() {
    // B4's table under the label B2 disagrees with the published Der of B2
    let dir = std::env::temp_dir().join(format!("jordeg-relabel-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("b.json");
    std::fs::write(
        &f,
        r#"{"dim": 2, "basis": ["e1", "e2"], "label": "B2", "products": {"e1*e1": "e1", "e2*e2": "e2"}}"#,
    )
    .unwrap();
    let (c, v) = json(&["invariants", f.to_str().unwrap()]);
    assert_eq!(c, 1);
    assert_eq!(record(&v, "B2 dim Der")["status"], "fail");
}

#[test]
fn cohomology_of_the_zero_algebra() {
    let (c, v) = json(&["cohomology", "C3"]);
    assert_eq!(c, 0);
    assert_eq!(v["payload"]["cohomology"]["dim_h2"], 18);
    let (_, v) = json(&["cohomology", "J5"]);
    assert_eq!(v["payload"]["cohomology"]["dim_h2"], 0);
}

#[test]
fn verify_deg_by_edge_and_file() {
    let (c, v) = json(&["verify-deg", "T03->T09"]);
    assert_eq!(c, 0);
    assert_eq!(record(&v, "derivations T03->T09")["detail"], "dim Der 1 -> 2");
    // the printed row fails, its correction verifies
    let (c, v) = json(&["verify-deg", "T16→T19"]);
    assert_eq!(c, 1);
    assert_eq!(record(&v, "witness T16->T19 [table]")["status"], "fail");
    assert_eq!(record(&v, "witness T16->T19 [table-corrected]")["status"], "pass");
    let (c, _) = json(&["verify-deg", &data("witnesses/dim2.json")]);
    assert_eq!(c, 0);
    let (c, _) = json(&["verify-deg", "T12->T01"]);
    assert_eq!(c, 1);
}

#[test]
fn verify_nondeg_pairs() {
    let (c, v) = json(&["verify-nondeg", "T06-/->T07"]);
    assert_eq!(c, 0);
    assert_eq!(record(&v, "certificate T06-/->T07 [peirce-obstruction, published]")["status"], "pass");
    let (_, v) = json(&["verify-nondeg", "T10,T17", "--trust-transcripts"]);
    assert_eq!(record(&v, "certificate T10-/->T17 [power-rank, derived]")["status"], "pass");
    assert_eq!(record(&v, "certificate T10-/->T17 [closed-set, published]")["status"], "fail");
    let (c, _) = json(&["verify-nondeg", "T03,T01"]);
    assert_eq!(c, 0);
    let (c, _) = json(&["verify-nondeg", &data("certificates/dim2.json")]);
    assert_eq!(c, 0);
}

#[test]
fn graph_exports() {
    let o = jordeg(&["graph", "dim2", "--dot"]);
    assert_eq!(code(&o), 0);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"B4\" -> \"B1\";"));
    let (c, v) = json(&["graph", "dim3"]);
    assert_eq!(c, 0);
    assert_eq!(v["payload"]["rigid"], serde_json::json!(["T01", "T02", "T05", "T10", "T12"]));
    assert_eq!(v["payload"]["levels"]["T12"], 1);
}

#[test]
fn catalog_lists_every_algebra() {
    let (c, v) = json(&["catalog", "list"]);
    assert_eq!(c, 0);
    assert_eq!(v["payload"]["algebras"].as_array().unwrap().len(), 26);
}

#[test]
fn verify_all_dim2_matches() {
    let (c, v) = json(&["verify-all", "dim2", "--data-dir", &data("")]);
    assert_eq!(c, 0, "{v:#}");
    assert_eq!(record(&v, "component C1 = closure(B2)")["status"], "pass");
    assert_eq!(record(&v, "component C2 = closure(B4)")["status"], "pass");
    assert_eq!(record(&v, "data file golden.json")["status"], "pass");
}

#[test]
fn verify_all_dim3_reports_the_differences() {
    let (c, v) = json(&["verify-all", "dim3"]);
    assert_eq!(c, 1);
    assert_eq!(record(&v, "rigid set")["status"], "pass");
    assert_eq!(record(&v, "intersection of components")["status"], "pass");
    for (i, gen) in ["T01", "T10", "T12"].iter().enumerate() {
        let item = format!("component C{} = closure({gen})", [1, 4, 5][i]);
        assert_eq!(record(&v, &item)["status"], "pass");
    }
    assert_eq!(record(&v, "component C2 = closure(T02)")["detail"], "- closure(T02) T17");
    let verified = v["payload"]["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|w| w["report"]["verified"] == true)
        .count();
    assert_eq!(verified, 27);
}

#[test]
fn verify_all_marginal() {
    let (c, v) = json(&["verify-all", "marginal", "2..6"]);
    assert_eq!(c, 0);
    let rows = v["payload"]["marginal"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["h2"] == 0 && r["level_one"] == true));
}

#[test]
fn data_dir_mismatch_is_a_failure() {
    let dir = std::env::temp_dir().join(format!("jordeg-data-{}", std::process::id()));
    std::fs::create_dir_all(dir.join("witnesses")).unwrap();
    std::fs::create_dir_all(dir.join("certificates")).unwrap();
    for rel in ["witnesses/dim2.json", "witnesses/dim3.json", "certificates/dim2.json", "certificates/dim3.json"] {
        std::fs::copy(data(rel), dir.join(rel)).unwrap();
    }
    std::fs::write(dir.join("golden.json"), "{}").unwrap();
    let (c, v) = json(&["verify-all", "dim2", "--data-dir", dir.to_str().unwrap()]);
    assert_eq!(c, 1);
    assert_eq!(record(&v, "data file golden.json")["status"], "fail");
    assert_eq!(record(&v, "data file witnesses/dim3.json")["status"], "pass");
}

#[test]
fn output_is_deterministic() {
    let a = jordeg(&["--format", "json", "--parallel", "1", "graph", "dim3"]).stdout;
    let b = jordeg(&["--format", "json", "--parallel", "4", "graph", "dim3"]).stdout;
    assert_eq!(a, b);
    let a = jordeg(&["verify-all", "dim2"]).stdout;
    let b = jordeg(&["verify-all", "dim2"]).stdout;
    assert_eq!(a, b);
}
