use std::fs;
use std::process::{Command, Output};

use plovkit_core::report::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plovkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn rank_prints_value() {
    let o = run(&["rank", "--k", "4", "--d", "3", "--n", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn plov_of_jordan_model() {
    let o = run(&["plov", "--jordan", "0,2,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "plov=4 gkdim=5 k=2\n");
}

#[test]
fn invalid_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"d": 2, "A": [[1, 2, 3], [0, 1, 1]]}"#).unwrap();
    assert_eq!(code(&run(&["plov", "--matrix", bad.to_str().unwrap()])), 2);

    let singular = dir.path().join("singular.json");
    fs::write(&singular, r#"{"A": [[2, 0], [0, 1]]}"#).unwrap();
    assert_eq!(code(&run(&["plov", "--matrix", singular.to_str().unwrap()])), 2);

    assert_eq!(code(&run(&["plov", "--matrix", "/nonexistent/model.json"])), 2);
    assert_eq!(code(&run(&["plov", "--jordan", "2,2,1"])), 2);
    assert_eq!(code(&run(&["plov", "--jordan", "1,2"])), 2);
    assert_eq!(code(&run(&["matrix", "--k", "4", "--d", "3", "--n", "0"])), 2);
    assert_eq!(code(&run(&["rank", "--k", "0", "--d", "3"])), 2);
    assert_eq!(code(&run(&["rank", "--k", "10", "--d", "5"])), 2);
    assert_eq!(code(&run(&["rank", "--k", "4"])), 2);
}

#[test]
fn positive_entropy_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat.json");
    fs::write(&cat, r#"{"d": 2, "A": [[2, 1], [1, 1]]}"#).unwrap();
    let o = run(&["plov", "--matrix", cat.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("positive entropy"));
}

#[test]
fn string_entries_and_polarization_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    fs::write(&m, r#"{"d": 2, "A": [["1", "1"], ["0", "1"]], "H": [[2, 1], [1, 2]]}"#).unwrap();
    let o = run(&["plov", "--matrix", m.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("plov=4 "));
}

#[test]
fn json_integers_are_strings_and_round_trip() {
    let o = run(&["matrix", "--k", "4", "--d", "3", "--n", "7", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entries = &v["records"][0]["values"]["entries"];
    assert_eq!(entries[4][3], serde_json::json!("3"));
    assert_eq!(v["config"]["k"], serde_json::json!("4"));
    assert_eq!(Report::from_json(&text).unwrap().to_json(), text);
}

#[test]
fn seeded_reports_are_identical() {
    let args = ["bounds", "--jordan", "0,3,1", "--seed", "42", "--samples", "5", "--format", "json"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let report = Report::from_json(&a).unwrap();
    assert_eq!(report.config["seed"], serde_json::json!("42"));
    assert!(report.timing_ms.is_none());
}

#[test]
fn csv_partition_list() {
    let o = run(&["partition", "list", "--k", "2", "--d", "3", "--n", "3", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "index,partition,exponents_k_to_0\n0,\"(2,1,0)\",1 1 1\n1,\"(1,1,1)\",0 3 0\n");
}

#[test]
fn csv_records_for_reports() {
    let o = run(&["lefschetz", "verify", "--k", "2", "--d", "2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("name,status,anchor,values\n"));
    assert!(text.contains("window_products,pass,"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.txt");
    let o = run(&["partition", "count", "--k", "4", "--d", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().nth(6), Some("6 5"));
}

#[test]
fn timing_is_opt_in() {
    let o = run(&["plov", "--jordan", "0,2,1", "--format", "json", "--timing"]);
    assert!(Report::from_json(&stdout(&o)).unwrap().timing_ms.is_some());
}

#[test]
fn verify_all_small_sweep_passes() {
    let o = run(&[
        "verify-all",
        "--sweep-max",
        "10",
        "--sl2-max",
        "8",
        "--symfun-max",
        "6",
        "--conjugates",
        "5",
        "--jobs",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let report = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.records.len(), 12);
    assert!(report.passed());
}

#[test]
fn verify_all_respects_ceiling() {
    assert_eq!(code(&run(&["verify-all", "--sweep-max", "50"])), 2);
}

#[test]
fn degrees_single_index() {
    let o = run(&["degrees", "--jordan", "0,2,1", "--i", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("deg_1(f^n) = "));
    assert_eq!(code(&run(&["degrees", "--jordan", "0,2,1", "--i", "3"])), 2);
}
