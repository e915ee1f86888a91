use std::process::Command;

use mvop_cli::{run, Outcome, EXIT_FAILURE, EXIT_INVALID_PARAMS, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn mvop(args: &str) -> Outcome {
    run(std::iter::once("mvop").chain(args.split_whitespace()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

const WORKED: &str = "--alpha 0 --beta 0 --v 1";

#[test]
fn validate_exit_codes() {
    let ok = mvop(&format!("validate {WORKED}"));
    assert_eq!(ok.code, EXIT_OK);
    let v = json(&ok);
    assert_eq!(v["valid"], true);
    assert_eq!(v["window"]["upper"], 2.0);

    let edge = mvop("validate --alpha 0 --beta 0 --v 2");
    assert_eq!(edge.code, EXIT_INVALID_PARAMS);
    assert_eq!(json(&edge)["violated"], "upper");

    let low = mvop("validate --alpha 1 --beta 0 --v -0.5");
    assert_eq!(low.code, EXIT_INVALID_PARAMS);
    assert_eq!(json(&low)["violated"], "lower");

    assert_eq!(mvop("validate --alpha 0 --beta 0 --v 0.5 --v2 7").code, EXIT_OK);
}

#[test]
fn usage_errors() {
    assert_eq!(mvop("validate --alpha 0 --beta 0").code, EXIT_USAGE);
    assert_eq!(mvop("validate --alpha zero --beta 0 --v 1").code, EXIT_USAGE);
    assert_eq!(mvop(&format!("emit table {WORKED}")).code, EXIT_USAGE);
    assert_eq!(mvop(&format!("verify {WORKED} --tolerance 0")).code, EXIT_USAGE);
    assert_eq!(mvop(&format!("verify symmetry {WORKED} --format xml")).code, EXIT_USAGE);
    assert_eq!(mvop("verify gegenbauer --p 1").code, EXIT_USAGE);
    assert_eq!(mvop("").code, EXIT_USAGE);
    let help = mvop("--help");
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("validate"));
}

#[test]
fn negative_values_parse() {
    let o = mvop("verify symmetry --alpha 0.5 --beta -0.25 --v 1.1");
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert_eq!(json(&o)["params"]["beta"], -0.25);
    assert_eq!(mvop("validate --alpha 0.5 --beta -0.25 --v -1.1").code, EXIT_OK);
}

#[test]
fn recurrence_csv_rows() {
    let o = mvop(&format!("emit recurrence {WORKED} -N 1 --format csv"));
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "n,A11,A22,B11,B12,B21,B22,S11,S22,lambda,mu");
    assert_eq!(lines.len(), 3);
    let row0: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&row0[3..7], &["0.5", "0.3333333333333333", "0.2", "0.5"]);
    assert_eq!(&row0[1..3], &["1", "1"]);
    let row1: Vec<f64> = lines[2].split(',').map(|c| c.parse().unwrap()).collect();
    assert!((row1[1] - 1.0 / 20.0).abs() < 1e-15 && (row1[2] - 7.0 / 300.0).abs() < 1e-15);
    assert!((row1[7] - 1.0 / 40.0).abs() < 1e-15 && (row1[8] - 7.0 / 360.0).abs() < 1e-15);
}

#[test]
fn eigenvalue_rows() {
    let o = mvop(&format!("emit eigenvalues -N 2 {WORKED} --format csv"));
    assert_eq!(o.stdout, "n,lambda,mu\n0,-1,0\n1,-5,-4\n2,-11,-10\n");
    let j = json(&mvop(&format!("emit eigenvalues --degree 2 {WORKED}")));
    assert_eq!(j["rows"][2]["lambda"], -11.0);
}

#[test]
fn weight_at_point() {
    let j = json(&mvop(&format!("emit weight --at 0.5 {WORKED}")));
    assert_eq!(j["weight"], serde_json::json!([0.25, 0.0, 0.0, 0.75]));
    assert_eq!(mvop(&format!("emit weight --at 1.5 {WORKED}")).code, EXIT_FAILURE);
    let coeffs = json(&mvop(&format!("emit weight {WORKED}")));
    assert_eq!(coeffs["polynomial"][2], serde_json::json!([3.0, 0.0, 0.0, 1.0]));
}

#[test]
fn operator_and_polynomials() {
    let j = json(&mvop(&format!("emit operator {WORKED}")));
    assert_eq!(j["C"], serde_json::json!([2.0, 1.0, 1.0, 2.0]));
    assert_eq!(j["U"], serde_json::json!([4.0, 0.0, 0.0, 4.0]));
    let p = json(&mvop(&format!("emit poly {WORKED} -N 3")));
    let polys = p["polynomials"].as_array().unwrap();
    assert_eq!(polys.len(), 4);
    // degree-indexed, monic
    assert_eq!(polys[3].as_array().unwrap().len(), 4);
    assert_eq!(polys[3][3], serde_json::json!([1.0, 0.0, 0.0, 1.0]));
}

#[test]
fn verify_reports() {
    let o = mvop(&format!("verify all {WORKED} -N 20"));
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    let j = json(&o);
    assert_eq!(j["pass"], true);
    let checks = j["checks"].as_array().unwrap();
    for name in ["symmetry_eq1", "orthogonality_exact", "determinant_identity", "hypergeom_ode", "commutant_dimension"] {
        assert!(checks.iter().any(|c| c["name"] == name), "{name}");
    }
    for c in checks {
        assert!(c["residual"].is_number() && c["threshold"].is_number(), "{c}");
    }

    let g = mvop("verify gegenbauer --p 1 --q 3");
    assert_eq!(g.code, EXIT_OK);
    let w = json(&g)["checks"].as_array().unwrap().iter().find(|c| c["name"] == "gegenbauer_weight").unwrap().clone();
    assert!(w["residual"].as_f64().unwrap() <= 1e-10);

    assert_eq!(mvop("verify all --alpha 0 --beta 0 --v 2").code, EXIT_INVALID_PARAMS);
}

#[test]
fn failing_check_names_its_location() {
    // q = 2p maps onto the lower window edge
    let o = mvop("verify gegenbauer --p 1 --q 2");
    assert_eq!(o.code, EXIT_FAILURE);
    let j = json(&o);
    assert_eq!(j["pass"], false);
    assert_eq!(j["first_failure"]["name"], "gegenbauer_window");

    // a tolerance below rounding level makes the f64 routes fail at some n
    let o = mvop(&format!("verify recurrence {WORKED} -N 20 --tolerance 1e-30"));
    assert_eq!(o.code, EXIT_FAILURE);
    let f = &json(&o)["first_failure"];
    assert!(f["first_failure"]["n"].is_u64(), "{f}");
}

#[test]
fn error_objects_on_stderr() {
    let o = mvop("emit norms --alpha 0 --beta 0 --v 3");
    assert_eq!(o.code, EXIT_INVALID_PARAMS);
    assert!(o.stdout.is_empty());
    let e: Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(e["code"], "param_out_of_window");
    assert!(e["message"].as_str().unwrap().contains("upper"));
}

#[test]
fn output_is_deterministic() {
    for args in [format!("emit poly {WORKED} -N 5"), format!("verify all {WORKED} --format csv")] {
        assert_eq!(mvop(&args), mvop(&args));
    }
}

#[test]
fn pretty_tables() {
    let o = mvop(&format!("emit eigenvalues -N 1 {WORKED} --format pretty"));
    assert_eq!(o.stdout, "n  lambda  mu\n0      -1   0\n1      -5  -4\n");
}

fn binary(args: &[&str], env: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mvop"));
    cmd.args(args).env_remove("MVOP_TOLERANCE");
    if let Some(t) = env {
        cmd.env("MVOP_TOLERANCE", t);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn binary_exit_codes_and_tolerance_precedence() {
    let base = ["verify", "irreducibility", "--alpha", "0", "--beta", "0", "--v", "1"];
    let tol = |out: &str| serde_json::from_str::<Value>(out).unwrap()["tolerance"].as_f64().unwrap();

    let (code, out) = binary(&base, None);
    assert_eq!(code, 0);
    assert_eq!(tol(&out), 1e-10);

    let (_, out) = binary(&base, Some("1e-8"));
    assert_eq!(tol(&out), 1e-8);

    let mut flagged = base.to_vec();
    flagged.extend(["--tolerance", "1e-6"]);
    let (_, out) = binary(&flagged, Some("1e-8"));
    assert_eq!(tol(&out), 1e-6);

    assert_eq!(binary(&base, Some("abc")).0, 64);
    assert_eq!(binary(&["validate", "--alpha", "0", "--beta", "0", "--v", "2"], None).0, 2);
    assert_eq!(binary(&["bogus"], None).0, 64);
}
