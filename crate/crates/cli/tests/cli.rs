use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use octopara::io::{parse_operator, to_json};
use octopara::random::{self, trial_rng};
use octopara::spectral::slice_projection;
use octopara::{OVector, ParaLinearOperator};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn octopara(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octopara")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = octopara(args);
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap())
}

fn ok_json(args: &[&str]) -> Value {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&out).unwrap()
}

fn operator_out(args: &[&str]) -> ParaLinearOperator {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{args:?}");
    parse_operator(&out, 1e-9).unwrap()
}

fn load(name: &str) -> ParaLinearOperator {
    parse_operator(&std::fs::read_to_string(data(name)).unwrap(), 1e-9).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_suites_pass() {
    assert_eq!(run(&["verify", "octonion", "--trials", "1000"]).0, 0);
    let report = ok_json(&["verify", "operator", "oracle", "--trials", "200"]);
    assert_eq!(report["failures"], 0);
    assert_eq!(report["suites"].as_array().unwrap().len(), 2);
    assert_eq!(report["suites"][0]["suite"], "operator");
    assert!(report["suites"][0].get("wall_seconds").is_none());
}

#[test]
fn verify_every_suite_briefly() {
    let report = ok_json(&["verify", "--trials", "8", "--timing"]);
    let names: Vec<&str> = report["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["octonion", "module", "operator", "polarization", "spectral", "funcalc", "oracle"]);
    assert!(report["suites"][0]["wall_seconds"].is_number());
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(run(&["verify", "unknown"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["funcalc", path(&data("identity.json"))]).0, 2);
}

#[test]
fn tolerance_override_reports_failures() {
    let (code, out) = run(&["verify", "octonion", "--trials", "20", "--tol", "0"]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&out).unwrap();
    let moufang = &report["suites"][0]["properties"][0];
    assert_eq!(moufang["name"], "moufang");
    assert_eq!(moufang["tol"], 0.0);
    assert!(moufang["failure_count"].as_u64().unwrap() > 0);
    let first = &moufang["failures"][0];
    assert!(first["trial"].is_u64() && first["dim"].is_u64() && first["residual"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_output_is_reproducible() {
    let args = ["verify", "spectral", "module", "--trials", "12", "--seed", "7"];
    let one = Command::new(env!("CARGO_BIN_EXE_octopara")).args(args).env("OCTOPARA_THREADS", "1").output().unwrap();
    let three = Command::new(env!("CARGO_BIN_EXE_octopara")).args(args).env("OCTOPARA_THREADS", "3").output().unwrap();
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(one.stdout, octopara(&args).stdout);
    assert_ne!(one.stdout, octopara(&["verify", "spectral", "module", "--trials", "12", "--seed", "8"]).stdout);
}

#[test]
fn decompose_diagonal() {
    let d = ok_json(&["decompose", path(&data("diagonal.json"))]);
    let pairs = d["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 2);
    assert_eq!(pairs[0]["lambda"], 2.0);
    assert_eq!(pairs[1]["lambda"], -1.0);
    for p in pairs {
        let z: OVector = serde_json::from_value(p["z"].clone()).unwrap();
        assert!(z.is_real(1e-14));
        assert_eq!(p["axis"].as_array().unwrap().len(), 7);
    }
    assert!(d["kernel"].as_array().unwrap().is_empty());
    assert!(d["residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn decompose_hermitian_example() {
    let d = ok_json(&["decompose", path(&data("hermitian.json"))]);
    let lambdas: Vec<f64> = d["pairs"].as_array().unwrap().iter().map(|p| p["lambda"].as_f64().unwrap()).collect();
    // Eigenvalues of [[3, p], [p̄, -1]] with |p|² = 2.5.
    let disc = (16.0f64 + 10.0).sqrt();
    assert_eq!(lambdas.len(), 2);
    assert!((lambdas[0] - (1.0 + disc / 2.0)).abs() < 1e-12);
    assert!((lambdas[1] - (1.0 - disc / 2.0)).abs() < 1e-12);
    assert!(d["residual"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn decompose_output_is_byte_identical() {
    let a = octopara(&["decompose", path(&data("hermitian.json")), "--seed", "3"]);
    let b = octopara(&["decompose", path(&data("hermitian.json")), "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn decompose_failures() {
    assert_eq!(run(&["decompose", path(&data("nonsymmetric.json"))]).0, 3);
    assert_eq!(run(&["decompose", path(&data("not_paralinear.json"))]).0, 5);
    assert_eq!(run(&["decompose", path(&data("does_not_exist.json"))]).0, 5);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2, \"core\": [[1, 2]]}").unwrap();
    assert_eq!(run(&["decompose", path(&bad)]).0, 5);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(run(&["decompose", path(&bad)]).0, 5);
}

#[test]
fn decompose_reports_non_standard_operators() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sym.json");
    let t = random::self_adjoint(&mut trial_rng(11, 0), 3);
    std::fs::write(&file, to_json(&t).unwrap()).unwrap();
    assert_eq!(run(&["decompose", path(&file)]).0, 4);
}

#[test]
fn polarize_examples() {
    let out = ok_json(&["polarize", path(&data("identity.json"))]);
    assert!(out["deviation"].as_f64().unwrap() <= 1e-10);
    let out = ok_json(&["polarize", path(&data("zero.json"))]);
    assert_eq!(out["deviation"], 0.0);
    let rebuilt: ParaLinearOperator = serde_json::from_value(out["operator"].clone()).unwrap();
    assert_eq!(rebuilt, ParaLinearOperator::zero(2));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    let t = random::operator(&mut trial_rng(5, 0), 3);
    std::fs::write(&file, to_json(&t).unwrap()).unwrap();
    let out = ok_json(&["polarize", path(&file)]);
    assert!(out["deviation"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn matrix_files_are_accepted() {
    let t = operator_out(&["adjoint", path(&data("identity_matrix.json"))]);
    assert_eq!(t, ParaLinearOperator::identity(1));
}

#[test]
fn funcalc_identity_function() {
    let input = load("hermitian.json");
    for side in ["left", "right"] {
        let out = operator_out(&["funcalc", path(&data("hermitian.json")), "--poly", "0,1", "--side", side]);
        assert!(out.max_abs_diff(&input) <= 1e-9);
    }
}

#[test]
fn funcalc_cube_of_projection() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    let u = random::slice(&mut trial_rng(2, 0), 3);
    let p = slice_projection(&(u.value() * (1.0 / u.norm()))).unwrap();
    std::fs::write(&file, to_json(&(p.clone() * 2.0)).unwrap()).unwrap();
    let out = operator_out(&["funcalc", path(&file), "--poly", "[0, 0, 0, 1]"]);
    assert!(out.max_abs_diff(&(p * 8.0)) <= 1e-9);
}

#[test]
fn funcalc_tables() {
    assert_eq!(run(&["funcalc", path(&data("diagonal.json")), "--table", path(&data("table_missing_zero.json"))]).0, 6);
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let (code, stdout) = run(&[
        "funcalc",
        path(&data("diagonal.json")),
        "--table",
        path(&data("table_diagonal.json")),
        "--side",
        "left",
        "-o",
        path(&target),
    ]);
    assert_eq!((code, stdout.as_str()), (0, ""));
    let left = parse_operator(&std::fs::read_to_string(&target).unwrap(), 1e-9).unwrap();
    let right = operator_out(&["funcalc", path(&data("diagonal.json")), "--table", path(&data("table_diagonal.json"))]);
    // With real eigenvectors the projections commute with every scalar
    // multiplication, so both calculi reduce to e1 on the first line and 3 on
    // the second.
    assert!(left.max_abs_diff(&right) < 1e-12);
    let e1 = octopara::Octonion::basis(1);
    let x = OVector::unit(2, 0).rmul(octopara::Octonion::basis(3));
    assert!((right.apply(&x).unwrap() - x.lmul(e1)).max_abs() < 1e-12);
    let y = OVector::unit(2, 1).rmul(octopara::Octonion::basis(5));
    assert!((right.apply(&y).unwrap() - y.clone() * 3.0).max_abs() < 1e-12);
}

#[test]
fn adjoint_and_norm() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    let adj = dir.path().join("adj.json");
    let t = random::operator(&mut trial_rng(9, 0), 2);
    std::fs::write(&file, to_json(&t).unwrap()).unwrap();
    assert_eq!(run(&["adjoint", path(&file), "--output", path(&adj)]).0, 0);
    let a = parse_operator(&std::fs::read_to_string(&adj).unwrap(), 1e-9).unwrap();
    assert_eq!(a, t.adjoint());
    let back = operator_out(&["adjoint", path(&adj)]);
    assert_eq!(back, t);

    let n = ok_json(&["norm", path(&data("diagonal.json"))]);
    assert!((n["norm"].as_f64().unwrap() - 2.0).abs() < 1e-13);
    let n = ok_json(&["norm", path(&file)]);
    assert!((n["norm"].as_f64().unwrap() - t.operator_norm()).abs() < 1e-13);
}
