use std::process::{Command, Output};

use qmittag::verify::VerifyReport;
use serde_json::Value;

fn qmittag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmittag")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn eval_extended_at_origin() {
    let o = qmittag(&["eval", "qml_extended", "--eta", "1", "--kappa", "1", "--sigma", "1", "--c", "2", "--q", "0.5", "--u", "0"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value_re"], 1.0);
    assert_eq!(v["value_im"], 0.0);
    assert_eq!(v["converged"], true);
    for k in ["value_re", "value_im", "terms_used", "tail_estimate", "converged"] {
        assert!(v.get(k).is_some(), "{k}");
    }
}

#[test]
fn eval_q_gamma() {
    let o = qmittag(&["eval", "q_gamma", "--u", "3", "--q", "0.5"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["value_re"].as_f64().unwrap() - 1.5).abs() < 1e-14);
}

#[test]
fn eval_complex_and_negative_literals() {
    let o = qmittag(&["eval", "q_gamma", "--u", "-0.5+0.25i", "--q", "0.3"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["value_im"].as_f64().unwrap() != 0.0);
}

#[test]
fn eval_exit_codes() {
    let outside = qmittag(&["eval", "qml_extended", "--u", "5", "--eta", "1", "--q", "0.5", "--kappa", "1", "--sigma", "1", "--c", "2"]);
    assert_eq!(code(&outside), 3);
    assert!(String::from_utf8_lossy(&outside.stderr).contains("domain"));
    assert_eq!(code(&qmittag(&["eval", "q_gamma", "--u", "0", "--q", "0.5"])), 3);
    assert_eq!(code(&qmittag(&["eval", "q_gamma", "--u", "3"])), 2);
    assert_eq!(code(&qmittag(&["eval", "q_gamma", "--u", "3x", "--q", "0.5"])), 2);
    assert_eq!(code(&qmittag(&["eval", "q_gamma", "--u", "3", "--q", "1.5"])), 2);
    assert_eq!(code(&qmittag(&["eval", "no_such_fn", "--u", "3"])), 2);
    assert_eq!(code(&qmittag(&["eval", "q_gamma", "--bogus", "1"])), 2);
    let bad_params = ["eval", "qml_extended", "--u", "0", "--eta", "1", "--q", "0.5", "--kappa", "1", "--sigma", "2", "--c", "1"];
    assert_eq!(code(&qmittag(&bad_params)), 2);
}

#[test]
fn table_over_u_is_monotone() {
    let o = qmittag(&["table", "q_mittag_leffler", "--sweep", "u", "--start", "0", "--stop", "1.9", "--count", "20", "--q", "0.5", "--eta", "1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "sweep_param,value_re,value_im,terms_used,converged");
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 20);
    let vals: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[1] > w[0]));
    assert!(rows.iter().all(|r| r[4] == "true"));
    assert!(!text.contains('\r'));
}

#[test]
fn table_over_q_at_origin_is_constant() {
    let o = qmittag(&["table", "q_mittag_leffler", "--sweep", "q", "--start", "0.1", "--stop", "0.9", "--count", "9", "--u", "0", "--eta", "1", "--kappa", "1"]);
    assert_eq!(code(&o), 0);
    for r in csv_rows(&o) {
        assert_eq!(r[1].parse::<f64>().unwrap(), 1.0);
    }
}

#[test]
fn table_minimal_and_failures() {
    let o = qmittag(&["table", "q_gamma", "--sweep", "u", "--start", "1", "--stop", "2", "--count", "2", "--q", "0.5"]);
    assert_eq!(csv_rows(&o).len(), 2);
    // u = 0 is a pole: that row fails, the rest succeed
    let o = qmittag(&["table", "q_gamma", "--sweep", "u", "--start", "-1", "--stop", "1", "--count", "3", "--q", "0.5"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows[0][1], "");
    assert_eq!(rows[1][1], "");
    assert_eq!(rows[1][4], "false");
    assert_eq!(rows[2][1].parse::<f64>().unwrap(), 1.0);
    let all_bad = qmittag(&["table", "q_mittag_leffler", "--sweep", "u", "--start", "2", "--stop", "3", "--count", "2", "--q", "0.5", "--eta", "1"]);
    assert_eq!(code(&all_bad), 3);
    assert_eq!(code(&qmittag(&["table", "q_gamma", "--sweep", "eta", "--start", "1", "--stop", "2", "--count", "2", "--q", "0.5"])), 2);
    assert_eq!(code(&qmittag(&["table", "q_gamma", "--sweep", "u", "--start", "1", "--stop", "2", "--count", "1", "--q", "0.5"])), 2);
    assert_eq!(code(&qmittag(&["table", "q_gamma", "--sweep", "u", "--start", "2", "--stop", "1", "--count", "3", "--q", "0.5"])), 2);
}

#[test]
fn table_json_round_trips() {
    let o = qmittag(&["table", "q_gamma", "--sweep", "u", "--start", "-1", "--stop", "1", "--count", "3", "--q", "0.5", "--format", "json"]);
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[1]["value_re"].is_null());
    assert_eq!(rows[1]["converged"], false);
    assert_eq!(rows[2]["value_re"], 1.0);
    assert!(text.ends_with("]\n"));
}

#[test]
fn verify_is_deterministic_and_honours_trials() {
    let args = ["verify", "--seed", "5", "--trials", "1", "--format", "json"];
    let a = qmittag(&args);
    let b = qmittag(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let records = v["records"].as_array().unwrap();
    assert!(records.len() >= 20);
    assert!(records.iter().all(|r| r["trials"] == 1));
    let all_pass = records.iter().all(|r| r["pass"] == true);
    assert_eq!(code(&a), if all_pass { 0 } else { 1 });
    for r in records {
        let (err, tol) = (r["max_abs_error"].as_f64().unwrap(), r["tolerance"].as_f64().unwrap());
        if r.get("failure").is_none() {
            assert_eq!(r["pass"], err <= tol);
        }
    }
    let typed: VerifyReport = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(typed, qmittag::verify::run_suite(5, Some(1)).unwrap());
}

#[test]
fn verify_rejects_zero_trials() {
    assert_eq!(code(&qmittag(&["verify", "--trials", "0"])), 2);
    assert_eq!(code(&qmittag(&["verify", "--format", "csv"])), 2);
}

#[test]
fn scan_rows() {
    let o = qmittag(&["scan", "--eta", "1", "--q", "0.5", "--fractions", "0,0.5,1.02"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next().unwrap(), "fraction,abs_u,terms_used,empirical_ratio,theoretical_ratio,converged");
    let rows = csv_rows(&o);
    assert_eq!(rows[0][2], "1");
    assert_eq!(rows[0][3].parse::<f64>().unwrap(), 0.0);
    let ratio: f64 = rows[1][3].parse().unwrap();
    assert!((ratio / 0.5 - 1.0).abs() < 0.05);
    assert_eq!(rows[1][5], "true");
    assert_eq!(rows[2][5], "false");
    assert_eq!(rows[2][2], "");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gamma.json");
    let o = qmittag(&["eval", "q_gamma", "--u", "2", "--q", "0.4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((v["value_re"].as_f64().unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn truncation_flags() {
    let loose = qmittag(&["eval", "q_mittag_leffler", "--u", "1", "--eta", "1", "--q", "0.5", "--tol", "1e-6"]);
    let tight = qmittag(&["eval", "q_mittag_leffler", "--u", "1", "--eta", "1", "--q", "0.5"]);
    let terms = |o: &Output| serde_json::from_str::<Value>(&stdout(o)).unwrap()["terms_used"].as_u64().unwrap();
    assert!(terms(&loose) < terms(&tight));
    let starved = qmittag(&["eval", "q_mittag_leffler", "--u", "1.9", "--eta", "1", "--q", "0.5", "--max-terms", "5"]);
    assert_eq!(code(&starved), 3);
    assert_eq!(code(&qmittag(&["eval", "q_gamma", "--u", "2", "--q", "0.5", "--tol", "-1"])), 2);
}
