use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cotame"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out: Output = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

fn map_file(dir: &TempDir, name: &str, ring: &str, images: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let v = serde_json::json!({ "ring": ring, "n": images.len(), "images": images });
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decide_square_over_q_and_f2() {
    let dir = TempDir::new().unwrap();
    let q = map_file(&dir, "q.json", "Q", &["x1 + x2^2", "x2", "x3"]);
    let (code, v) = run_json(&["decide", "--ring", "Q", "--n", "3", "--phi", s(&q)]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["verdict"], "stably-cotame");
    assert!(v["payload"]["route"]["kind"].is_string());

    let f2 = map_file(&dir, "f2.json", "Fp:2", &["x1 + x2^2", "x2", "x3"]);
    let (code, v) = run_json(&["decide", "--ring", "Fp:2", "--n", "3", "--phi", s(&f2)]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["verdict"], "not-stably-cotame");
    assert_eq!(v["payload"]["route"]["kind"], "ngg");
}

#[test]
fn unknown_verdict_exits_two_with_budget_notes() {
    let dir = TempDir::new().unwrap();
    let f3 = map_file(&dir, "f3.json", "Fp:3", &["x1 + x2^5", "x2", "x3"]);
    let (code, v) = run_json(&["decide", "--phi", s(&f3)]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "unknown-verdict");
    let notes = v["diagnostics"].as_array().unwrap();
    assert!(notes.iter().any(|d| d.as_str().unwrap().contains("candidates examined")));
}

#[test]
fn witness_then_verify_and_tamper() {
    let dir = TempDir::new().unwrap();
    let phi = map_file(&dir, "phi.json", "Fp:5", &["x1 + x2*x3", "x2", "x3"]);
    let word = dir.path().join("word.json");
    let (code, v) = run_json(&[
        "witness", "--ring", "Fp:5", "--n", "3", "--phi", s(&phi), "--target", "x2^2*x3", "-o", s(&word),
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["verified"], true);
    assert!(v["payload"]["word_length"].as_u64().unwrap() > 0);

    let (code, v) = run_json(&["verify", "--phi", s(&phi), "--target", "x2^2*x3", "--word", s(&word)]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["ok"], true);

    // wrong target
    let (code, _) = run_json(&["verify", "--phi", s(&phi), "--target", "x2*x3", "--word", s(&word)]);
    assert_eq!(code, 1);

    let mut w: Value = serde_json::from_str(&std::fs::read_to_string(&word).unwrap()).unwrap();
    let letters = w["letters"].as_array_mut().unwrap();
    let k = letters.iter().position(|l| l["kind"] == "affine").unwrap();
    letters[k]["b"][0] = Value::String("1".into());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, w.to_string()).unwrap();
    let (code, v) = run_json(&["verify", "--phi", s(&phi), "--target", "x2^2*x3", "--word", s(&bad)]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    assert_eq!(v["payload"]["first_mismatch"], 0);
}

#[test]
fn witness_text_mode_reports_route_and_length() {
    let dir = TempDir::new().unwrap();
    let phi = map_file(&dir, "phi.json", "Fp:5", &["x1 + x2*x3", "x2", "x3"]);
    let (code, text) = run(&["witness", "--phi", s(&phi), "--target", "x3^3", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("route: j-full"), "{text}");
    assert!(text.contains("word_length: "), "{text}");
}

#[test]
fn supplied_inverse_is_checked() {
    let dir = TempDir::new().unwrap();
    let phi = map_file(&dir, "phi.json", "Fp:5", &["x1 + x2*x3", "x2", "x3"]);
    let good = map_file(&dir, "inv.json", "Fp:5", &["x1 - x2*x3", "x2", "x3"]);
    let bad = map_file(&dir, "bad.json", "Fp:5", &["x1 + x2*x3", "x2", "x3"]);
    let args = |inv: &Path| {
        vec!["witness".to_string(), "--phi".into(), s(&phi).into(), "--phi-inverse".into(), s(inv).into(), "--target".into(), "x2^2".into()]
    };
    let out = bin().args(args(&good)).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(args(&bad)).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let phi = map_file(&dir, "phi.json", "Fp:3", &["x1 + x2^2*x3^2", "x2", "x3"]);
    let args = ["classify", "--phi", s(&phi), "--seed", "7"];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(args).output().unwrap().stdout;
    assert_eq!(a, b);
}

#[test]
fn classify_fields() {
    let dir = TempDir::new().unwrap();
    let phi = map_file(&dir, "phi.json", "Fp:5", &["x1 + x2*x3", "x2", "x3"]);
    let (code, v) = run_json(&["classify", "--ring", "Fp:5", "--n", "3", "--phi", s(&phi), "--ksize", "5"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["good_monomials"][0]["monomial"], "x2*x3");
    assert_eq!(p["I_phi"]["full"], true);
    assert_eq!(p["J_phi_certified"], true);
    assert_eq!(p["ngg"], false);
    assert_eq!(p["verdict"], "stably-cotame");
}

#[test]
fn theta_analysis() {
    let (code, v) = run_json(&["theta", "--N", "1", "--ring", "Fp:7", "--analyze"]);
    assert_eq!(code, 0);
    let a = &v["payload"]["analysis"];
    assert_eq!(a["theta_prime_x2_coeff_x1^2*x3^4"], "6");
    assert_eq!(a["involution"], true);
    for t in a["top_parts"].as_array().unwrap() {
        assert_eq!(t["holds"], serde_json::json!([true, true]));
    }
    let (code, v) = run_json(&["theta", "--N", "2", "--ring", "GF:2^2", "--analyze"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["analysis"]["ngg"], true);
    let (code, _) = run_json(&["theta", "--N", "3", "--ring", "Fp:2"]);
    assert_eq!(code, 1);
}

#[test]
fn compose_invert_reduce_and_parse() {
    let dir = TempDir::new().unwrap();
    let phi = map_file(&dir, "phi.json", "Zn:6", &["x1 + 5*x2*x3 + 4", "x2 + 3*x3", "x3"]);
    let inv = dir.path().join("inv.json");
    let (code, _) = run_json(&["invert", "--phi", s(&phi), "-o", s(&inv)]);
    assert_eq!(code, 0);
    let (code, v) = run_json(&["compose", "--phi", s(&phi), "--psi", s(&inv)]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["images"], serde_json::json!(["x1", "x2", "x3"]));

    let (code, v) = run_json(&["reduce", "--phi", s(&phi), "--ideal", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["ring"], "Zn:3");

    let (code, v) = run_json(&["parse", "--ring", "Q", "--n", "2", "(x1 + x2)^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["terms"], 3);
    let (code, v) = run_json(&["parse", "--ring", "Q", "--n", "2", "x1 + * x2"]);
    assert_eq!(code, 1);
    assert!(v["diagnostics"][0].as_str().unwrap().contains("position"));
}

#[test]
fn ngg_check_lists_offending_terms() {
    let dir = TempDir::new().unwrap();
    let phi = map_file(&dir, "phi.json", "Fp:2", &["x1 + x2^2 + x2*x3", "x2", "x3"]);
    let (code, v) = run_json(&["ngg-check", "--phi", s(&phi)]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["ngg"], false);
    assert_eq!(v["payload"]["offending"][0]["monomial"], "x2*x3");
}

#[test]
fn mismatched_ring_is_an_error() {
    let dir = TempDir::new().unwrap();
    let phi = map_file(&dir, "phi.json", "Fp:5", &["x1 + x2*x3", "x2", "x3"]);
    let (code, v) = run_json(&["decide", "--ring", "Fp:7", "--phi", s(&phi)]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    let (code, _) = run_json(&["decide", "--n", "2", "--phi", s(&phi)]);
    assert_eq!(code, 1);
}
