use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalie")).args(args).env_remove("ZETALIE_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn temp_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("zetalie-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn coefficient_of_aab() {
    let o = run(&["assoc", "coeff", "AAB"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-ζ(3)\n");
}

#[test]
fn pentagon_verification() {
    let v = json(&["assoc", "verify", "--relation", "pentagon", "--degree", "4", "--digits", "40"]);
    assert_eq!(v["relation"], "pentagon");
    assert!(v["residual_log10"].as_f64().unwrap() < -25.0);
    assert_eq!(v["passed"], true);
}

#[test]
fn dimension_table_json() {
    let v = json(&["sda", "table", "--max-weight", "10"]);
    let dims: Vec<u64> = v["weights"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [0, 0, 1, 0, 1, 0, 1, 1, 1, 1]);
}

#[test]
fn bounds_table() {
    let v = json(&["sda", "bounds", "--max-weight", "10"]);
    let d: Vec<u64> = v["d"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(d, [1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7]);
    let dprime: Vec<&str> = v["dprime"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(dprime, ["1", "0", "1", "1", "1", "2", "2", "3", "4", "5", "7"]);
}

#[test]
fn csv_header_matches_json_fields() {
    let o = run(&["assoc", "verify", "--relation", "duality", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let v = json(&["assoc", "verify", "--relation", "duality"]);
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    let mut sorted = header.clone();
    sorted.sort();
    keys.sort();
    assert_eq!(sorted, keys);
}

#[test]
fn mzv_eval_matches_pi_fourth_over_360() {
    let v = json(&["mzv", "eval", "1,3", "--digits", "30"]);
    // π^4/360
    assert!(v["value"].as_str().unwrap().starts_with("0.27058080842778454787900092"));
}

#[test]
fn weight_four_relations() {
    let v = json(&["mzv", "relations", "--weight", "4", "--digits", "80"]);
    assert_eq!(v["basis"], serde_json::json!(["ζ(4)"]));
    let exprs = v["expressions"].as_array().unwrap();
    let find = |name: &str| exprs.iter().find(|e| e["value"] == name).unwrap()["terms"][0][1].as_str().unwrap().to_string();
    assert_eq!(find("ζ(1,3)"), "1/4");
    assert_eq!(find("ζ(2,2)"), "3/4");
}

#[test]
fn witness_in_weight_five() {
    let v = json(&["assoc", "witness", "--weight", "5", "--digits", "120"]);
    assert_eq!(v["in_dw"], true);
    assert_eq!(v["relations_verified"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["mzv", "eval", "2,1"]).status.code(), Some(2));
    assert_eq!(run(&["assoc", "coeff", "AXB"]).status.code(), Some(2));
    assert_eq!(run(&["sda", "table", "--digits", "5"]).status.code(), Some(2));
    assert_eq!(run(&["sda", "frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["assoc", "verify", "--relation", "octagon"]).status.code(), Some(2));
}

#[test]
fn resource_limits_exit_three() {
    assert_eq!(run(&["sda", "basis", "--weight", "13"]).status.code(), Some(3));
    assert_eq!(run(&["assoc", "verify", "--relation", "pentagon", "--degree", "9"]).status.code(), Some(3));
}

#[test]
fn json_is_identical_with_cold_warm_and_corrupt_cache() {
    let dir = temp_dir("cache");
    let d = dir.to_str().unwrap();
    let args = ["sda", "table", "--max-weight", "9", "--format", "json", "--cache-dir", d];
    let cold = run(&args);
    let warm = run(&args);
    let uncached = run(&["sda", "table", "--max-weight", "9", "--format", "json", "--no-cache"]);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, uncached.stdout);

    let files: Vec<PathBuf> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!files.is_empty());
    for f in &files {
        let text = std::fs::read_to_string(f).unwrap();
        std::fs::write(f, text.replacen('1', "2", 3)).unwrap();
    }
    let repaired = run(&args);
    assert_eq!(repaired.status.code(), Some(0));
    assert_eq!(repaired.stdout, cold.stdout);
    assert!(String::from_utf8_lossy(&repaired.stderr).contains("recomputing"));
    let _ = std::fs::remove_dir_all(&dir);
}
