use std::process::{Command, Output};

use serde_json::Value;

fn curvatom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvatom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Data rows of a CSV document, split into fields.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

fn sign_changes(values: &[f64]) -> usize {
    let nonzero: Vec<f64> = values.iter().copied().filter(|v| v.abs() > 1e-12).collect();
    nonzero.windows(2).filter(|w| w[0].signum() != w[1].signum()).count()
}

#[test]
fn flat_spectrum() {
    let out = curvatom(&["spectrum", "--kappa", "0", "--n-max", "3"]);
    assert!(out.status.success());
    let energies: Vec<f64> = rows(&stdout(&out)).iter().map(|r| num(&r[1])).collect();
    assert_eq!(energies.len(), 3);
    for (n, e) in energies.iter().enumerate() {
        let n = (n + 1) as f64;
        assert!((e + 1.0 / (n * n)).abs() < 1e-15);
    }
}

#[test]
fn hyperbolic_spectrum_stops_at_last_bound_level() {
    let out = curvatom(&["spectrum", "--kappa", "-0.01", "--n-max", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(rows(&text).len(), 3);
    assert!(text.ends_with("# no further bound states beyond n=3\n"));
    let json: Value =
        serde_json::from_str(&stdout(&curvatom(&["spectrum", "--kappa", "-0.01", "--n-max", "10", "--format", "json"])))
            .unwrap();
    assert_eq!(json["levels"].as_array().unwrap().len(), 3);
    assert_eq!(json["max_principal_n"], 3);
}

#[test]
fn zero_levels_is_a_usage_error() {
    let out = curvatom(&["spectrum", "--kappa", "0", "--n-max", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("curvatom: error[usage]:"));
}

#[test]
fn malformed_flags_are_usage_errors() {
    assert_eq!(curvatom(&["spectrum", "--kappa", "inf", "--n-max", "2"]).status.code(), Some(2));
    assert_eq!(curvatom(&["wavefunction", "--kappa", "0", "--n", "1", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(curvatom(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn ground_state_on_unit_sphere() {
    let out = curvatom(&["wavefunction", "--kappa", "1", "--n", "1", "--l", "0", "--samples", "50"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("# curvatom v1, kappa=1.0000000000000000e0, n=1, l=0, E=-1.0000000000000000e0, B="));
    let b = num(header.rsplit("B=").next().unwrap());
    let body = rows(&text);
    assert_eq!(body.len(), 50);
    for row in &body {
        let (r, g) = (num(&row[0]), num(&row[1]));
        assert!((g - b * (-r).exp()).abs() < 1e-13 * b);
    }
    let g: Vec<f64> = body.iter().map(|r| num(&r[1])).collect();
    assert_eq!(sign_changes(&g), 0);
}

#[test]
fn one_radial_node() {
    let out = curvatom(&["wavefunction", "--kappa", "0.25", "--n", "3", "--l", "1", "--samples", "400"]);
    assert!(out.status.success());
    let g: Vec<f64> = rows(&stdout(&out)).iter().map(|r| num(&r[1])).collect();
    assert_eq!(sign_changes(&g), 1);
    assert!(g[0] > 0.0);
}

#[test]
fn sampled_function_is_normalized() {
    let out = curvatom(&["wavefunction", "--kappa", "0.25", "--n", "2", "--l", "0", "--samples", "4000"]);
    let data: Vec<(f64, f64)> = rows(&stdout(&out)).iter().map(|r| (num(&r[0]), num(&r[1]))).collect();
    let h = data[0].0;
    // trapezoid with G² S² = 0 at the origin
    let integral: f64 = data
        .iter()
        .map(|&(r, g)| {
            let s = (0.5 * r).sin() / 0.5;
            g * g * s * s * h
        })
        .sum::<f64>()
        - 0.5 * h * data.last().map_or(0.0, |&(r, g)| (g * (0.5 * r).sin() / 0.5).powi(2));
    assert!((integral - 1.0).abs() < 1e-5, "{integral}");
}

#[test]
fn unbound_state_exits_with_domain_error() {
    let out = curvatom(&["wavefunction", "--kappa", "-0.01", "--n", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).starts_with("curvatom: error[no_bound_state]:"));
    let out = curvatom(&["wavefunction", "--kappa", "1", "--n", "1", "--r-max", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).starts_with("curvatom: error[domain]:"));
    let out = curvatom(&["wavefunction", "--kappa", "0", "--n", "2", "--l", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).starts_with("curvatom: error[quantum_numbers]:"));
}

#[test]
fn output_is_deterministic() {
    let args = ["wavefunction", "--kappa", "-0.0025", "--n", "3", "--l", "1", "--format", "json"];
    let a = curvatom(&args);
    let b = curvatom(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let json: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(json["format"], "curvatom v1");
    assert_eq!(json["n"], 3);
    assert_eq!(json["r"].as_array().unwrap().len(), json["G"].as_array().unwrap().len());
    assert!(stdout(&a).contains("\"E\": -1.3111111111111112e-1"));
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("curvatom-test-{}.csv", std::process::id()));
    let out = curvatom(&["spectrum", "--kappa", "0.04", "--n-max", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(rows(&text)[1][1], "-1.3000000000000000e-1");
}

#[test]
fn duff_suite_is_exact() {
    let out = curvatom(&["verify", "--suite", "duff", "--n-max", "10"]);
    assert!(out.status.success());
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["suite"], "duff");
    assert_eq!(json["cases"], 66);
    assert_eq!(json["passed"], true);
    assert_eq!(json["worst_residual"].as_f64(), Some(0.0));
}

#[test]
fn ode_suite_at_one_curvature() {
    let out = curvatom(&["verify", "--suite", "ode", "--kappa", "0.04"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["passed"], true);
    assert!(json["worst_residual"].as_f64().unwrap() <= 1e-5);
}

#[test]
fn failing_suite_reports_and_exits_one() {
    let out = curvatom(&["verify", "--suite", "polynomials", "--n-max", "3", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["passed"], false);
    assert!(!json["failures"].as_array().unwrap().is_empty());
    assert!(stderr(&out).starts_with("curvatom: error[verification_failed]:"));
}

#[test]
fn flat_limit_sweep() {
    let out = curvatom(&["flatlimit", "--n", "2", "--l", "0"]);
    assert!(out.status.success());
    let table = rows(&stdout(&out));
    assert_eq!(table.len(), 7);
    let errors: Vec<f64> = table.iter().map(|r| num(&r[1])).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]));
    for row in &table[3..] {
        assert!((0.05..=0.5).contains(&num(&row[2])));
    }
    let json: Value =
        serde_json::from_slice(&curvatom(&["flatlimit", "--n", "1", "--l", "0", "--format", "json"]).stdout).unwrap();
    let at_1e6 = json["rows"][4]["error"].as_f64().unwrap();
    assert!(at_1e6 < 1e-6, "{at_1e6}");
}
