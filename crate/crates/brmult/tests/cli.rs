use std::process::Command;

use serde_json::Value;

fn mult(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mult")).args(args).output().expect("runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn without_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn e_of_m_squared() {
    let (code, v, _) = mult(&["e", "--gens", "x^2, x*y, y^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["e"], 4);
    assert_eq!(v["method"], "ALL");
    assert_eq!(v["consistent"], true);
}

#[test]
fn single_routes() {
    let (_, v, _) = mult(&["e", "--gens", "x^3, y^2", "--route", "difference"]);
    assert_eq!(v["e"], 6);
    assert_eq!(v["method"], "DIFFERENCE");
    let (code, _, err) = mult(&["e", "--gens", "x + y^2, x*y", "--route", "newton"]);
    assert_eq!(code, 1);
    assert!(err.contains("not monomials"));
}

#[test]
fn br_of_small_module() {
    let (code, v, _) = mult(&["br", "--matrix", r#"[["x","0","y"],["0","y","x"]]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["br"], 3);
    assert_eq!(v["routes"]["LAMBDA"], 3);
}

#[test]
fn colength_reports_its_certificate() {
    let (_, v, _) = mult(&["colength", "--gens", "x^2, x*y^3, y^6"]);
    assert_eq!(v["colength"], 9);
    assert!(v["stable_from"].as_u64().unwrap() < v["truncation"].as_u64().unwrap());
}

#[test]
fn input_errors_exit_one() {
    let (code, _, err) = mult(&["e", "--gens", "x^2 +* y"]);
    assert_eq!(code, 1);
    assert!(err.contains("byte 5"), "{err}");
    let (code, _, _) = mult(&["br", "--matrix", "[[\"x\""]);
    assert_eq!(code, 1);
    let (code, _, _) = mult(&["e", "--gens", "x*y"]);
    assert_eq!(code, 1);
    let (code, _, _) = mult(&["jones", "--params", "1,1,0,1,1,1"]);
    assert_eq!(code, 1);
}

#[test]
fn same_seed_same_report() {
    let args = ["e", "--gens", "x^3 + y^4, x*y^2", "--seed", "11", "--field", "fp"];
    let (_, a, _) = mult(&args);
    let (_, b, _) = mult(&args);
    assert_eq!(without_time(a), without_time(b));
}

#[test]
fn jones_report_and_picture() {
    let dir = std::env::temp_dir().join(format!("mult-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("j.svg");
    let json = dir.join("j.json");
    let (code, v, _) = mult(&[
        "jones",
        "--params",
        "2,3,1,2,1,0",
        "--svg-out",
        svg.to_str().unwrap(),
        "--json-out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["case"], "a3");
    assert_eq!(v["method"], "GRAPH2");
    assert_eq!(v["br"], v["oracle"]);
    let picture = std::fs::read_to_string(&svg).unwrap();
    assert!(picture.starts_with("<?xml"));
    assert_eq!(picture.matches("class=\"anchor\"").count(), 5);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(without_time(saved), without_time(v));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn degenerate_jones_instance() {
    let (code, v, _) = mult(&["jones", "--params", "1,1,1,1,1,0"]);
    assert_eq!(code, 0);
    assert!(v["degenerate"].as_str().unwrap().contains("PQ"));
    assert_eq!(v["family"], Value::Null);
}

#[test]
fn small_suites_pass() {
    let (code, v, _) = mult(&["verify", "rankone", "--count", "5", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!((v["pass"].as_u64(), v["fail"].as_u64()), (Some(5), Some(0)));
    let (code, v, _) = mult(&["verify", "ingclosed", "--count", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], 5);
    let (code, v, _) = mult(&["verify", "jones", "--max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["fail"], 0);
}

#[test]
fn counterexample_keys() {
    let (code, v, _) = mult(&["verify", "counterexample"]);
    assert_eq!(code, 0);
    for (k, want) in [("e_I", 280), ("e_J", 744), ("e_F0_IJ", 546), ("e_F0_IJprime", 594), ("rhs", 416), ("br", 420)] {
        assert_eq!(v[k], want, "{k}");
    }
    assert_eq!(v["match"], false);
}
