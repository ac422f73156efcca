use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn coneoff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coneoff")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn structural_toy_passes() {
    let o = coneoff(&["certify", "--k", "6", "--q", "3", "--structural"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = stdout_json(&o);
    assert_eq!(r["links"]["isomorphic_links"], r["links"]["cone_vertices"]);
}

#[test]
fn default_run_fails_on_girth() {
    let o = coneoff(&["certify"]);
    assert_eq!(code(&o), 1);
    let r = stdout_json(&o);
    let failing: Vec<&str> = r["ledger"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["pass"] == false)
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["v", "vi"]);
    assert_eq!(r["required_level"], 33);
}

#[test]
fn bad_parameters_exit_2() {
    assert_eq!(code(&coneoff(&["certify", "--k", "15"])), 2);
    assert_eq!(code(&coneoff(&["certify", "--b-fraction", "1.5"])), 2);
    assert_eq!(code(&coneoff(&["certify", "--bogus"])), 2);
    assert_eq!(code(&coneoff(&["girth", "/nonexistent/graph.json"])), 2);
    assert_eq!(code(&coneoff(&["--help"])), 0);
}

#[test]
fn certificates_are_bit_identical() {
    let a = coneoff(&["certify", "--k", "7", "--q", "5", "--structural"]);
    let b = coneoff(&["certify", "--k", "7", "--q", "5", "--structural"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format_lists_every_ledger_entry() {
    let o = coneoff(&["certify", "--format", "text"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let entries: Vec<&str> = text.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(entries.len(), 10);
    assert!(entries.iter().any(|l| l.contains("vi]") && l.contains("FAIL")));
}

#[test]
fn config_file_and_out_flag() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "cfg.json", &json!({"k": 6, "q": 3, "structural": true}));
    let out = dir.path().join("report.json");
    let o = coneoff(&["certify", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["params"]["k"], 6);
    // explicit flags beat the file
    let o = coneoff(&["certify", "--config", &cfg, "--k", "5"]);
    assert_eq!(stdout_json(&o)["params"]["k"], 5);
    let bad = write(dir.path(), "bad.json", &json!({"kk": 6}));
    assert_eq!(code(&coneoff(&["certify", "--config", &bad])), 2);
}

#[test]
fn tampered_constants_fail_the_first_inequality() {
    let dir = TempDir::new().unwrap();
    let o = coneoff(&["constants"]);
    assert_eq!(code(&o), 0);
    let mut c = stdout_json(&o)["constants"].clone();
    c["b"] = json!(c["mu"].as_f64().unwrap() + 0.01);
    let path = write(dir.path(), "constants.json", &c);
    let o = coneoff(&["certify", "--constants", &path]);
    assert_eq!(code(&o), 1);
    let r = stdout_json(&o);
    let first = &r["ledger"][0];
    assert_eq!(first["id"], "i");
    assert_eq!(first["pass"], false);
    assert_eq!(r["geometry"]["constants_overridden"], true);
}

#[test]
fn graph_commands() {
    let dir = TempDir::new().unwrap();
    let petersen_edges: Vec<Value> = (0..5)
        .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)])
        .enumerate()
        .map(|(id, (u, v))| json!({"id": id, "u": u, "v": v}))
        .collect();
    let g = write(dir.path(), "g.json", &json!({"vertices": (0..10).collect::<Vec<_>>(), "edges": petersen_edges}));
    assert_eq!(stdout_json(&coneoff(&["girth", &g]))["girth"], 5);
    let o = coneoff(&["spectrum", &g]);
    assert_eq!(code(&o), 0);
    let l1 = stdout_json(&o)["lambda1"].as_f64().unwrap();
    assert!((l1 - 2.0 / 3.0).abs() < 1e-9);

    let o = coneoff(&["lps", "--k", "18", "--q", "5"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn racg_commands() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", &json!({"generators": 3, "commuting_pairs": [[0, 1]]}));
    let r = stdout_json(&coneoff(&["racg", "reduce", &w, "--word", "1,0,2,1,0"]));
    assert_eq!(r["normal_form"], json!([0, 1, 2, 0, 1]));
    let r = stdout_json(&coneoff(&["racg", "reduce", &w, "--word", "0,2,1,0"]));
    assert_eq!(r["reduced"].as_array().unwrap().len(), 4);
    let r = stdout_json(&coneoff(&["racg", "reduce", &w, "--word", "0,1,0"]));
    assert_eq!(r["normal_form"], json!([1]));
    assert!(!r["witness"].is_null());

    let dihedral = write(dir.path(), "d.json", &json!({"generators": 2, "commuting_pairs": []}));
    let r = stdout_json(&coneoff(&["racg", "ball", &dihedral, "--radius", "3"]));
    assert_eq!(r["size"], 7);
    let o = coneoff(&["racg", "modulus", &dihedral, "--radius", "3"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert!(r["record"]["modulus"].as_u64().unwrap() <= 5);
    assert_eq!(r["recheck"], true);
    assert_eq!(code(&coneoff(&["racg", "reduce", &w, "--word", "0,7"])), 2);
}
