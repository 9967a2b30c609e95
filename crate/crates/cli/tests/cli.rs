use std::path::PathBuf;
use std::process::{Command, Output};

use crystal_dual::datum::GROUP90_TOML;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_crystal-dual"));
    c.env_remove("CRYSTAL_DUAL_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn datum_file(name: &str, text: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn orbit_reports_size_stabilizer_and_type() {
    let v = json(&run(&["orbit", "@g90", "1,1,1"]));
    assert_eq!(v["orbit"]["size"], 1);
    assert_eq!(v["orbit"]["stabilizer"].as_array().unwrap().len(), 8);
    let v = json(&run(&["orbit", "@g90", "1/4,1/4,1/2"]));
    assert_eq!(v["orbit"]["size"], 4);
    assert_eq!(v["orbit"]["stabilizer"], serde_json::json!(["e", "a3b"]));
    assert_eq!(v["orbit"]["type"], "4-T1");
    let v = json(&run(&["orbit", "@g90", "0.13,0.29,0.41"]));
    assert_eq!(v["orbit"]["size"], 8);
    assert_eq!(v["meta"]["group"], "90");
}

#[test]
fn irreps_lists_the_dual_with_generator_matrices() {
    let v = json(&run(&["irreps", "@g90", "1/2,1/2,0"]));
    let dims: Vec<u64> = v["reps"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 1, 1, 1, 2]);
    let a = &v["reps"][4]["generators"]["a"];
    assert_eq!(a.as_array().unwrap().len(), 2);
    assert_eq!(a[0][0].as_array().unwrap().len(), 2);

    let v = json(&run(&["irreps", "@g90", "1/2,0,1/3"]));
    let dims: Vec<u64> = v["reps"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [4, 4]);

    let v = json(&run(&["irreps", "@g90", "0,0,0"]));
    let trivial = v["reps"].as_array().unwrap().iter().any(|r| {
        ["a", "b", "c"].iter().all(|g| {
            let z = &r["generators"][g][0][0];
            r["dim"] == 1 && (z[0].as_f64().unwrap() - 1.0).abs() < 1e-9 && z[1].as_f64().unwrap().abs() < 1e-9
        })
    });
    assert!(trivial);
}

#[test]
fn json_output_is_deterministic_and_seed_is_read_from_the_environment() {
    let a = run(&["irreps", "@g90", "(1,-1,1/5)"]);
    let b = run(&["irreps", "@g90", "(1,-1,1/5)"]);
    assert_eq!(a.stdout, b.stdout);
    let c = bin().args(["irreps", "@g90", "(1,-1,1/5)"]).env("CRYSTAL_DUAL_SEED", "7").output().unwrap();
    assert_eq!(json(&c)["meta"]["seed"], 7);
    let d = run(&["irreps", "@g90", "(1,-1,1/5)", "--seed", "7"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn pretty_output_renders_exact_entries() {
    let out = run(&["irreps", "@g90", "1/2,1/2,0", "--format", "pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("type 1-T2"), "{text}");
    assert!(text.contains("[-i]"), "{text}");
}

fn multiplicities(v: &Value) -> Value {
    v["report"]["multiplicities"].clone()
}

#[test]
fn limit_presets_report_expected_multiplicities() {
    let v = json(&run(&["limit", "@g90", "--preset", "2T3to1T2", "--branch", "1"]));
    assert_eq!(multiplicities(&v), serde_json::json!({"π2": 1, "π3": 1}));
    let v = json(&run(&["limit", "@g90", "--preset", "8to1T1", "--branch", "1"]));
    assert_eq!(multiplicities(&v), serde_json::json!({"π1": 1, "π2": 1, "π3": 1, "π4": 1, "π5": 2}));
    let v = json(&run(&["limit", "@g90", "--preset", "4T3to1T2", "--branch", "1", "--with-unitary"]));
    assert_eq!(multiplicities(&v), serde_json::json!({"π3": 1, "π4": 1, "π5": 1}));
    assert!(v["report"]["block_diagonalization"]["leakage"].as_f64().unwrap() <= 1e-7);
}

#[test]
fn limit_accepts_explicit_paths() {
    let v = json(&run(&["limit", "@g90", "--path", "(1/2, 1/2, 1/4-1/4*t)", "--branch", "3"]));
    assert_eq!(multiplicities(&v), serde_json::json!({"π5": 1}));
    assert_eq!(v["reps"][0]["dim"], 2);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["orbit", "@g90", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["limit", "@g90", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["limit", "@g90", "--preset", "8to1T1", "--branch", "9"]).status.code(), Some(2));
    assert_eq!(run(&["orbit", "/nonexistent/g.toml", "1,1,1"]).status.code(), Some(2));
    let bad = datum_file("syntax.toml", "dim = \n");
    let out = run(&["orbit", &bad, "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax.toml:1"));
}

#[test]
fn verify_passes_on_the_bundled_datum() {
    let out = run(&["verify-group90"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 8);
    assert_eq!(v["discrepancies"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_fails_on_a_shifted_section() {
    let text = GROUP90_TOML.replace("a = [\"1/2\", \"0\", \"0\"]", "a = [\"3/2\", \"0\", \"0\"]");
    assert_ne!(text, GROUP90_TOML);
    let out = run(&["verify-group90", &datum_file("shifted.toml", &text)]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["criteria"][0]["passed"], false);
    assert!(v["criteria"][0]["detail"].as_str().unwrap().contains("relator"));
}

#[test]
fn verify_names_the_chart_row_of_a_mutated_action() {
    let text = GROUP90_TOML.replace("a3b = [[0, 1, 0], [1, 0, 0], [0, 0, -1]]", "a3b = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]");
    assert_ne!(text, GROUP90_TOML);
    let out = run(&["verify-group90", &datum_file("mutated.toml", &text)]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("chart row 'a3b'"), "{stderr}");
}
