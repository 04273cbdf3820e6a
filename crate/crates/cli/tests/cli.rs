use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};
use spinspec_cli::{run, Status};

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn link(name: &str) -> String {
    fixture(&format!("../core/fixtures/links/{name}"))
}

fn ok(args: &[&str]) -> Value {
    let r = run(std::iter::once("spinspec").chain(args.iter().copied()));
    assert_eq!(r.status, Status::Ok, "{args:?}: {:?}", r.diagnostics);
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.stdout, serde_json::to_string_pretty(&r.payload).unwrap() + "\n");
    r.payload
}

fn exit_code(args: &[&str]) -> i32 {
    run(std::iter::once("spinspec").chain(args.iter().copied())).exit_code
}

#[test]
fn circle_entries() {
    let v = ok(&["circle", "--spin", "nontrivial", "--kmin", "-1", "--kmax", "0"]);
    assert_eq!(v["spectrum"]["entries"], json!([["-1/2", 1], ["1/2", 1]]));
    let v = ok(&["circle", "--window", "20"]);
    assert_eq!(v["eta"], json!("0"));
    assert_eq!(v["spectrum"]["entries"].as_array().unwrap().len(), 41);
}

#[test]
fn projective_three_space_eta() {
    let a = ok(&["lens", "--q", "2", "--p", "1,1", "--lift", "0", "--eta"]);
    let b = ok(&["lens", "--q", "2", "--p", "1,1", "--lift", "1", "--eta"]);
    assert_eq!(a["eta"], json!("1/4"));
    assert_eq!(b["eta"], json!("-1/4"));
    let f = ok(&["--precision", "float", "lens", "--q", "2", "--p", "1,1", "--lift", "0", "--eta"]);
    assert!((f["eta"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    let none = ok(&["lens", "--q", "2", "--p", "1,1,1", "--eta"]);
    assert_eq!(none["spin_structures"], json!(0));
    assert_eq!(none["structures"], json!([]));
}

#[test]
fn explicit_quaternion_group() {
    let v = ok(&["spaceform", "--file", &fixture("tests/data/q8.json"), "--lift", "0", "--eta", "--kmax", "6"]);
    assert_eq!(v["eta"], json!("13/16"));
    assert_eq!(v["order"], json!(8));
    assert_eq!(v["multiplicities"]["mu_plus"][0], json!(2));
}

#[test]
fn link_subcommands() {
    let v = ok(&["link", "classify", "--file", &link("whitehead.lnk"), "--assert-hyperbolic"]);
    assert_eq!(v["classification"], json!("DiscreteForAll"));
    assert_eq!(v["parity_matrix"], json!([[0, 0], [0, 0]]));
    let v = ok(&["link", "classify", "--file", &link("6-2-2.lnk"), "--assert-hyperbolic"]);
    assert_eq!(v["classification"], json!("ExistsRealLine"));
    let r = run(["spinspec", "link", "classify", "--file", &link("6-2-2.lnk")]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.payload["hyperbolic"], json!("not asserted"));
    assert_eq!(r.diagnostics.len(), 1);
    let v = ok(&["link", "cusps", "--flags", "nontrivial,nontrivial"]);
    assert_eq!(v["spectrum"], json!("Discrete"));
    let v = ok(&["link", "cusps"]);
    assert_eq!(v["spectrum"], json!("Discrete"));
    let v = ok(&["link", "table", "--dim", "3", "--cusps", "2"]);
    assert_eq!(v["realline_possible"], json!("depends on M"));
}

#[test]
fn tables_and_checks() {
    let v = ok(&["bieberbach", "--group", "Z4"]);
    assert_eq!(v["total_spin_structures"], json!(4));
    let v = ok(&["dahl", "--eta1", "4/3", "--eta2", "-2/3", "--realizable"]);
    assert_eq!(v, json!({"applicable": true, "difference": "2", "pass": true}));
    let v = ok(&["dahl", "--eta1", "1/4", "--eta2", "-1/4"]);
    assert_eq!(v["pass"], Value::Null);
    let v = ok(&["dahl", "--eta1", "0.3333333333", "--eta2", "-0.6666666667", "--realizable", "--tol", "1e-8"]);
    assert_eq!(v["pass"], json!(true));
    let v = ok(&["weyl", "--sphere", "3", "--kmax", "30", "--lambda", "41/2"]);
    let r = &v["reports"][0];
    let rel = (r["ratio"].as_f64().unwrap() / r["limit_constant"].as_f64().unwrap() - 1.0).abs();
    assert!(rel < 0.15);
}

#[test]
fn torus_and_sphere() {
    let v = ok(&["torus", "--basis", "2 0; 0 2", "--pi", "--delta", "1,1", "--window", "1", "--systoles"]);
    assert_eq!(v["harmonic_spinors"], json!(0));
    assert_eq!(v["spectrum"]["entries"][0], json!([{"sign": -1, "sqrt": "1/2"}, 4]));
    let v = ok(&["sphere", "--n", "3", "--kmax", "2"]);
    let entries = v["spectrum"]["entries"].as_array().unwrap();
    assert!(entries.contains(&json!(["-3/2", 2])) && entries.contains(&json!(["7/2", 12])));
}

#[test]
fn collapse_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c.json");
    std::fs::write(
        &input,
        r#"{"projectable": false, "base_dim_parity": "even", "k_indices": ["1/2", "-1/2"]}"#,
    )
    .unwrap();
    let v = ok(&["collapse", "--file", input.to_str().unwrap()]);
    assert_eq!(v["convergent_limits"], json!([]));
    let samples = dir.path().join("s.json");
    std::fs::write(&samples, "[[0.1, 5.2], [0.01, 50.1], [0.001, 500.01]]").unwrap();
    let v = ok(&["collapse", "--file", input.to_str().unwrap(), "--samples", samples.to_str().unwrap(), "--k", "1/2", "--tol", "0.3"]);
    assert_eq!(v["trend"]["pass"], json!(true));
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["nosuch"]), 2);
    assert_eq!(exit_code(&["circle"]), 2);
    assert_eq!(exit_code(&["circle", "--spin", "odd", "--kmin", "0", "--kmax", "1"]), 2);
    assert_eq!(exit_code(&["lens", "--q", "4", "--p", "2,1"]), 1);
    assert_eq!(exit_code(&["bieberbach", "--group", "Z5"]), 1);
    assert_eq!(exit_code(&["link", "table", "--dim", "4"]), 1);
    assert_eq!(exit_code(&["link", "parity", "--file", "/nonexistent.lnk"]), 1);
    assert_eq!(exit_code(&["--help"]), 0);
}

#[test]
fn csv_and_out() {
    let r = run(["spinspec", "--csv", "sphere", "--n", "3", "--kmax", "1"]);
    assert_eq!(r.stdout, "eigenvalue,multiplicity\n-5/2,6\n-3/2,2\n3/2,2\n5/2,6\n");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.csv");
    let r = run(["spinspec", "bieberbach", "--csv", "--out", out.to_str().unwrap()]);
    assert!(r.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("group,total_spin_structures,eta,count\n"));
    assert_eq!(text.lines().count(), 12);
}

fn keys_sorted(v: &Value) -> bool {
    match v {
        Value::Object(m) => {
            let keys: Vec<&String> = m.keys().collect();
            keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(keys_sorted)
        }
        Value::Array(a) => a.iter().all(keys_sorted),
        _ => true,
    }
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_spinspec");
    let args = ["lens", "--q", "5", "--p", "1,2", "--eta", "--kmax", "5", "--theta", "0.5"];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(keys_sorted(&v));
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text, serde_json::to_string_pretty(&v).unwrap() + "\n");
    let bad = Command::new(bin).args(["lens", "--q", "4", "--p", "2,1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    let usage = Command::new(bin).arg("sphere").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
