use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_monodromy-lab"))
}

fn run(args: &[&str]) -> (Output, Value) {
    let out = bin().args(args).output().expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, v)
}

fn schema() -> Value {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/docs/report.schema.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn validate(report: &Value) {
    let s = schema();
    for key in s["required"].as_array().unwrap() {
        assert!(report.get(key.as_str().unwrap()).is_some(), "missing {key}");
    }
    for key in s["properties"]["config"]["required"].as_array().unwrap() {
        assert!(report["config"].get(key.as_str().unwrap()).is_some(), "config missing {key}");
    }
    let item_keys = s["properties"]["checks"]["items"]["required"].as_array().unwrap();
    for check in report["checks"].as_array().unwrap() {
        for key in item_keys {
            assert!(check.get(key.as_str().unwrap()).is_some());
        }
        assert!(check["pass"].is_boolean());
    }
    let allowed = s["properties"]["status"]["enum"].as_array().unwrap();
    assert!(allowed.contains(&report["status"]));
}

fn is_complex_matrix(v: &Value, n: usize) -> bool {
    v.as_array().is_some_and(|rows| {
        rows.len() == n
            && rows.iter().all(|r| {
                r.as_array().is_some_and(|cells| {
                    cells.len() == n && cells.iter().all(|z| z.as_array().is_some_and(|p| p.len() == 2))
                })
            })
    })
}

#[test]
fn verify_defaults() {
    let (out, v) = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    validate(&v);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["braid"]["word"], serde_json::json!(["b23_inverse"]));
    assert_eq!(v["braid"]["signs"], serde_json::json!([1, -1, -1, 1]));
    assert!(is_complex_matrix(&v["connection"]["C"], 4));
    assert_eq!(v["stokes"]["S"], serde_json::json!([[1, -4, -11, -5], [0, 1, 4, 4], [0, 0, 1, 5], [0, 0, 0, 1]]));
    assert!(v["sectors"]["printed_pi_minus"].is_array());
    assert_eq!(v["prefactors"]["notes"].as_array().unwrap().len(), 3);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("b23_inverse"));
}

#[test]
fn period_coefficients() {
    let (out, v) = run(&["period"]);
    assert_eq!(out.status.code(), Some(0));
    validate(&v);
    let got: Vec<(i64, i64)> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["num"].as_i64().unwrap(), r["den"].as_i64().unwrap()))
        .collect();
    assert_eq!(got, vec![(1, 1), (2, 1), (3, 4), (5, 54), (35, 6912), (7, 48000)]);
}

#[test]
fn phitop_cubic_block() {
    let (out, v) = run(&["phitop", "--order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let blocks = v["coefficients"].as_array().unwrap();
    assert_eq!(blocks.len(), 4);
    assert_eq!(blocks[3]["power"], 3);
    let m: Vec<Vec<i64>> = blocks[3]["matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| {
                    assert_eq!(x["den"], 1);
                    x["num"].as_i64().unwrap()
                })
                .collect()
        })
        .collect();
    assert_eq!(m, vec![vec![2, 0, 0, 1], vec![0, -2, 0, 0], vec![0, 0, -2, 0], vec![0, 0, 0, 2]]);
}

#[test]
fn byte_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = bin().args(["verify", "--output"]).arg(p).output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ta.is_empty());
    assert_eq!(ta, tb);
}

#[test]
fn floats_carry_seventeen_digits() {
    let out = bin().arg("connection").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let key = "\"stability_spread\":";
    let start = text.find(key).unwrap() + key.len();
    let number: String = text[start..].chars().take_while(|c| !matches!(c, ',' | '}')).collect();
    let mantissa = number.split('e').next().unwrap().trim_start_matches('-');
    assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{number}");
}

#[test]
fn exit_codes() {
    let (out, v) = run(&["gamma", "--tol", "c_gamma=1e-40"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["failed"], serde_json::json!(["c_gamma_closed_form"]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("c_gamma_closed_form"));

    for args in [
        &["verify", "--tol", "unknown=1"][..],
        &["verify", "--tol", "braid=0"],
        &["stokes", "--order", "4"],
        &["stokes", "--z0-stokes", "abc"],
        &["nonsense"],
    ] {
        let (out, _) = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let (out, v) = run(&["verify", "--tol", "unknown=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(v["status"], "config_error");
}

#[test]
fn stokes_at_larger_base_point_needs_looser_constancy() {
    let (out, v) = run(&["stokes", "--z0-stokes", "2,pi/4"]);
    assert_eq!(v["stokes"]["s_prime"], serde_json::json!([[1, 4, 4, 0], [0, 1, 0, 0], [0, 5, 1, 0], [-4, -5, -11, 1]]));
    if out.status.code() == Some(1) {
        assert_eq!(v["failed"], serde_json::json!(["stokes_constancy"]));
    }
    let (out, _) = run(&["stokes", "--z0-stokes", "2,pi/4", "--tol", "stokes_constancy=1e-6"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn pretty_output() {
    let out = bin().args(["euler-matrix", "--pretty"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("euler_matrix:"));
    assert!(text.contains(" 1   5  16  14"), "{text}");
}

#[test]
fn solutions_identities() {
    let (out, v) = run(&["solutions", "--check-identities"]);
    assert_eq!(out.status.code(), Some(0));
    validate(&v);
    assert_eq!(v["identities"].as_array().unwrap().len(), 6);
    assert_eq!(v["contour_oracle"].as_array().unwrap().len(), 10);
}

#[test]
fn qcoh_tables() {
    let (out, v) = run(&["qcoh"]);
    assert_eq!(out.status.code(), Some(0));
    let products: Vec<&str> = v["quantum_products"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(products.contains(&"s1 * s2 = q s0 + s21"), "{products:?}");
    assert_eq!(v["U"][1][0], serde_json::json!({"num": 3, "den": 1}));
}
