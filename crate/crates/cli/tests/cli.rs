use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const TANH_REFERENCE: [f64; 6] = [
    1.9503339, 6.0115779, 12.0083261, 20.0055193, 30.0038467, 42.0028139,
];

fn pdm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdm"))
        .args(args)
        .env_remove("PDM_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn eigenvalues(doc: &Value) -> Vec<f64> {
    doc["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["eps_scaled"].as_f64().unwrap())
        .collect()
}

fn samples(doc: &Value, key: &str) -> Vec<f64> {
    doc["samples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s[key].as_f64().unwrap())
        .collect()
}

#[test]
fn tanh_table() {
    let doc = json(&pdm(&["eigen", "--case", "tanh", "--v0", "1", "--count", "6", "--format", "json"]));
    let eps = eigenvalues(&doc);
    assert_eq!(eps.len(), 6);
    for (e, t) in eps.iter().zip(TANH_REFERENCE) {
        assert!(((e - t) / t).abs() < 1e-5);
    }
    assert_eq!(doc["eigenvalues"][0]["provenance"], "series-root");
    assert_eq!(doc["meta"]["case"], "tanh");
    // E = ℰ a²ħ²/(2 m0) with unit parameters
    let e_phys = doc["eigenvalues"][0]["E_physical"].as_f64().unwrap();
    assert!((e_phys - eps[0] / 2.0).abs() < 1e-15);
}

#[test]
fn free_spectrum_and_bad_count() {
    let doc = json(&pdm(&["eigen", "--case", "v0", "--count", "3"]));
    assert_eq!(eigenvalues(&doc), vec![2.0, 6.0, 12.0]);
    assert_eq!(doc["eigenvalues"][2]["provenance"], "analytic");
    assert_eq!(pdm(&["eigen", "--case", "v0", "--count", "0"]).status.code(), Some(2));
    assert_eq!(pdm(&["eigen", "--case", "nope"]).status.code(), Some(2));
    assert_eq!(pdm(&["eigen", "--case", "tanh", "--count", "13"]).status.code(), Some(2));
    assert_eq!(pdm(&["eigen", "--case", "custom"]).status.code(), Some(2));
}

#[test]
fn fd_solver_provenance() {
    let doc = json(&pdm(&["eigen", "--case", "v0", "--count", "2", "--solver", "fd"]));
    let eps = eigenvalues(&doc);
    assert!((eps[0] - 2.0).abs() < 1e-5 && (eps[1] - 6.0).abs() < 1e-5);
    assert_eq!(doc["eigenvalues"][0]["provenance"], "fd-oracle");
    assert!(doc["meta"]["params"]["grid_points"].as_u64().is_some());
}

#[test]
fn output_is_deterministic_and_formats_agree() {
    let args = ["eigen", "--case", "tanh", "--v0", "0.5", "--count", "3"];
    let a = pdm(&args);
    let b = pdm(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());
    let json_text = String::from_utf8(a.stdout).unwrap();
    let tokens: Vec<&str> = json_text
        .split("\"eps_scaled\": ")
        .skip(1)
        .map(|rest| rest.split([',', '\n']).next().unwrap())
        .collect();
    assert_eq!(tokens.len(), 3);
    let csv_out = pdm(&[&args[..], &["--format", "csv"]].concat());
    let text = String::from_utf8(csv_out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,eps_scaled,E_physical,provenance"));
    for (row, token) in lines.zip(tokens) {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[1], token);
        assert_eq!(cols[3], "series-root");
        // 17 significant digits
        assert_eq!(token.split('e').next().unwrap().len(), 18);
    }
}

#[test]
fn free_ground_state_peaks_at_origin() {
    let doc = json(&pdm(&["wavefn", "--case", "v0", "--n", "1", "--samples", "201"]));
    let psi = samples(&doc, "psi");
    let x = samples(&doc, "x");
    let peak = psi
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .unwrap()
        .0;
    assert_eq!(x[peak], 0.0);
    assert_eq!(doc["eigenvalues"][0]["eps_scaled"].as_f64(), Some(2.0));
}

#[test]
fn tanh_ground_state_is_quasi_symmetric() {
    let doc = json(&pdm(&[
        "wavefn", "--case", "tanh", "--v0", "1", "--n", "1", "--x-min", "-15", "--x-max", "15", "--samples", "3001",
    ]));
    let psi = samples(&doc, "psi");
    let h = 30.0 / 3000.0;
    let norm: f64 = psi.iter().map(|p| p * p).sum::<f64>() * h;
    let overlap: f64 = psi.iter().zip(psi.iter().rev()).map(|(a, b)| a * b).sum::<f64>() * h;
    assert!((norm - 1.0).abs() < 1e-6);
    assert!(overlap > 0.9, "{overlap}");
}

#[test]
fn wavefn_by_eigenvalue() {
    let eig = json(&pdm(&["eigen", "--case", "tanh", "--v0", "1", "--count", "2"]));
    let e2 = format!("{}", eigenvalues(&eig)[1]);
    let doc = json(&pdm(&["wavefn", "--case", "tanh", "--v0", "1", "--eps", &e2]));
    assert_eq!(doc["eigenvalues"][0]["index"], 2);
    assert_eq!(pdm(&["wavefn", "--case", "tanh", "--v0", "1", "--eps", "4.0"]).status.code(), Some(3));
    assert_eq!(pdm(&["wavefn", "--case", "v0", "--eps", "5"]).status.code(), Some(3));
    assert_eq!(pdm(&["wavefn", "--case", "v0"]).status.code(), Some(2));
    let doc = json(&pdm(&["wavefn", "--case", "sinh2", "--eps", "9"]));
    assert_eq!(doc["eigenvalues"][0]["index"], 3);
}

#[test]
fn box_odd_state_vanishes_at_origin() {
    let doc = json(&pdm(&["wavefn", "--case", "sinh2", "--n", "2", "--samples", "11", "--x-min", "-1", "--x-max", "1"]));
    let psi = samples(&doc, "psi");
    let phi = samples(&doc, "phi");
    assert_eq!(psi[5], 0.0);
    assert_eq!(phi[5], 0.0);
    assert!((psi[0] + psi[10]).abs() < 1e-15);
}

#[test]
fn validate_default_passes() {
    let out = pdm(&["validate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["all_pass"], true);
    let names: Vec<&str> = doc["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for required in ["heun-2f1-reduction", "v0-fd-agreement", "tanh-reference-values", "tanh-orthogonality", "sinh2-ode-residual"] {
        assert!(names.contains(&required), "{required}");
    }
}

#[test]
fn validate_detects_injected_fault() {
    let out = pdm(&["validate", "--case", "v0", "--perturb-eps", "1e-3"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let residual = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "v0-ode-residual")
        .unwrap();
    assert_eq!(residual["pass"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("[FAIL] v0-ode-residual"));
}

#[test]
fn validate_ordering() {
    let out = pdm(&["validate", "--case", "ordering", "--alpha", "0", "--gamma", "1"]);
    let doc = json(&out);
    let check = &doc["checks"][0];
    assert_eq!(check["name"], "ordering-ambiguity");
    assert!(check["detail"].as_str().unwrap().contains("max |U_k| on [-10, 10] = 0.000e0"));
    let weyl = json(&pdm(&["ordering", "--alpha", "0", "--gamma", "0"]));
    assert_eq!(weyl["ambiguity_free"], false);
    assert!((weyl["u_k_at_origin"].as_f64().unwrap() + 0.25).abs() < 1e-12);
    let bdd = json(&pdm(&["ordering", "--alpha", "1", "--gamma", "0"]));
    assert_eq!(bdd["max_abs_u_k"].as_f64(), Some(0.0));
}

#[test]
fn output_locations() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_pdm"))
        .args(["eigen", "--case", "v0", "--count", "2", "--format", "csv"])
        .env("PDM_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("eigen-v0.csv")).unwrap();
    assert!(text.starts_with("index,eps_scaled"));

    let file = dir.path().join("explicit.json");
    let out = pdm(&["eigen", "--case", "sinh2", "--count", "2", "--output", file.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(eigenvalues(&doc), vec![1.0, 4.0]);
}

fn write_table(path: &Path, f: impl Fn(f64) -> f64) {
    let mut w = csv::Writer::from_path(path).unwrap();
    w.write_record(["z", "v"]).unwrap();
    let n = 4001;
    for i in 0..n {
        let z = (i as f64 / (n - 1) as f64 - 0.5) * (std::f64::consts::PI - 1e-4);
        w.write_record([z.to_string(), f(z).to_string()]).unwrap();
    }
    w.flush().unwrap();
}

#[test]
fn custom_potential_via_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("tanh.csv");
    write_table(&table, f64::sin);
    let doc = json(&pdm(&["eigen", "--case", "custom", "--potential-file", table.to_str().unwrap(), "--count", "3"]));
    for (e, t) in eigenvalues(&doc).iter().zip(TANH_REFERENCE) {
        assert!((e - t).abs() < 1e-3, "{e} vs {t}");
    }
    assert_eq!(doc["eigenvalues"][0]["provenance"], "fd-oracle");
    let wf = json(&pdm(&["wavefn", "--case", "custom", "--potential-file", table.to_str().unwrap(), "--n", "1"]));
    assert!(samples(&wf, "psi").iter().all(|p| *p >= 0.0));
}
