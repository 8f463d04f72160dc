use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn catsim(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catsim"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], out: &Path) {
    let o = catsim(args, out);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn rows(path: &Path) -> Vec<Vec<f64>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn eraser_writes_oracle_columns_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["eraser", "--alpha", "2", "--beta", "2"], dir.path());
    let manifest = json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["command"], "eraser");
    assert!(manifest["max_deviation"].as_f64().unwrap() < 1e-8);
    assert_eq!(manifest["passed"], true);
    assert!(manifest["timestamp"].as_str().unwrap().contains('T'));
    let outputs: Vec<&str> = manifest["outputs"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(outputs.contains(&"eraser_fringes.csv") && outputs.contains(&"eraser_whichway.csv"));

    let header = fs::read_to_string(dir.path().join("eraser_fringes.csv")).unwrap();
    assert!(header.starts_with("p,density_plus,density_minus,oracle_plus,oracle_minus\n"));
    let fringes = rows(&dir.path().join("eraser_fringes.csv"));
    assert_eq!(fringes.len(), 1201);
    for r in &fringes {
        assert!((r[1] - r[3]).abs() < 1e-8 && (r[2] - r[4]).abs() < 1e-8);
    }
    let summary = json(&dir.path().join("eraser_summary.json"));
    assert_eq!(summary["manifest"], "manifest.json");
}

#[test]
fn eraser_without_cat_has_no_fringes() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["eraser", "--alpha", "0", "--beta", "2"], dir.path());
    let summary = json(&dir.path().join("eraser_summary.json"));
    assert!(summary["fringe_visibility"].as_f64().unwrap() < 1e-9);
    for r in rows(&dir.path().join("eraser_fringes.csv")) {
        let gaussian = (-r[0] * r[0]).exp() / std::f64::consts::PI.sqrt();
        assert!((r[1] - gaussian).abs() < 1e-10);
    }
}

#[test]
fn eraser_large_beta_matches_simple_fringes() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["eraser", "--alpha", "2", "--beta", "8"], dir.path());
    let summary = json(&dir.path().join("eraser_summary.json"));
    assert!(summary["fringe_simple_deviation"].as_f64().unwrap() < 1e-8);
}

#[test]
fn identical_flags_give_identical_data_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["eraser", "--alpha", "1.5", "--beta", "2", "--grid-points", "601"];
    ok(&args, a.path());
    ok(&args, b.path());
    for name in ["eraser_fringes.csv", "eraser_whichway.csv", "eraser_summary.json"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn json_format_writes_row_objects() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["eraser", "--format", "json", "--grid-points", "401"], dir.path());
    let rows = json(&dir.path().join("eraser_fringes.json"));
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 401);
    assert!(rows[200]["oracle_plus"].is_f64());
    assert!(!dir.path().join("eraser_fringes.csv").exists());
}

#[test]
fn leggett_garg_single_point_equals_sweep_row() {
    let single = tempfile::tempdir().unwrap();
    let sweep = tempfile::tempdir().unwrap();
    ok(&["lg", "--alpha", "2"], single.path());
    ok(&["lg", "--alpha-sweep", "1:2.5:0.5"], sweep.path());
    let one = fs::read_to_string(single.path().join("lg_sweep.csv")).unwrap();
    let many = fs::read_to_string(sweep.path().join("lg_sweep.csv")).unwrap();
    let one: Vec<&str> = one.lines().collect();
    let many: Vec<&str> = many.lines().collect();
    assert_eq!(one[0], "alpha,e12,e13,e23,b_lg,p_cond");
    assert_eq!(many.len(), 5);
    assert_eq!(one[1], many[3]);

    let r = &rows(&single.path().join("lg_sweep.csv"))[0];
    assert!((r[4] - std::f64::consts::SQRT_2).abs() < 5e-3);
    assert!(r[5] >= 0.999);
    let summary = json(&sweep.path().join("lg_summary.json"));
    assert_eq!(summary["points"], 4);
    assert_eq!(summary["violation"], true);
}

#[test]
fn witness_defaults_and_trivial_angles() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["dw"], dir.path());
    let report = json(&dir.path().join("dw_report.json"));
    assert!((report["i_dw"].as_f64().unwrap() - 3.8284).abs() < 5e-3);
    assert!((report["analytic_i_dw"].as_f64().unwrap() - (1.0 + 2.0 * std::f64::consts::SQRT_2)).abs() < 1e-12);
    assert_eq!(report["classical_bound"].as_f64().unwrap(), 3.0);
    assert_eq!(report["correlators"].as_array().unwrap().len(), 5);

    let zero = tempfile::tempdir().unwrap();
    ok(&["dw", "--angles", "0,0,0,0,0"], zero.path());
    let report = json(&zero.path().join("dw_report.json"));
    assert!((report["i_dw"].as_f64().unwrap() - 1.0).abs() < 1e-6);

    let qubit = tempfile::tempdir().unwrap();
    ok(&["dw", "--qubit-model"], qubit.path());
    let report = json(&qubit.path().join("dw_report.json"));
    assert!((report["i_dw"].as_f64().unwrap() - (1.0 + 2.0 * std::f64::consts::SQRT_2)).abs() < 1e-12);
}

#[test]
fn bad_flags_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 7] = [
        &["dw", "--angles", "pi/16,0,0,0,0"],
        &["dw", "--angles", "half,0,0,0,0"],
        &["dw", "--angles", "0,0"],
        &["lg", "--alpha", "2", "--alpha-sweep", "1:2:0.5"],
        &["lg", "--beta", "1,2"],
        &["eraser", "--grid-points", "1200"],
        &["qfunc", "--theta", "pi/16"],
    ];
    for args in cases {
        let o = catsim(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn engine_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let o = catsim(&["eraser", "--nmax", "4"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncation"));
    let o = catsim(&["eraser", "--grid-span", "2"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn thread_count_comes_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_catsim"))
        .args(["dw", "--out-dir"])
        .arg(dir.path())
        .env("CATSIM_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_catsim"))
        .args(["dw", "--out-dir"])
        .arg(dir.path())
        .env("CATSIM_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn epr_sweep_has_paradox_region_for_each_beta() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["epr", "--beta", "0.5,1,2", "--alpha-sweep", "0:3:0.25"], dir.path());
    let table = rows(&dir.path().join("epr_sweep.csv"));
    assert_eq!(table.len(), 3 * 13);
    for r in &table {
        assert!((r[2] - r[6]).abs() < 1e-8 && (r[3] - r[7]).abs() < 1e-8);
    }
    let summary = json(&dir.path().join("epr_summary.json"));
    for curve in summary["curves"].as_array().unwrap() {
        assert!(curve["paradox_points"].as_u64().unwrap() > 0);
        assert!(curve["min_eps_sq"].as_f64().unwrap() < 0.25);
    }
    let manifest = json(&dir.path().join("manifest.json"));
    assert!(manifest["max_deviation"].as_f64().unwrap() < 1e-8);
}

#[test]
fn qfunc_preparation_has_equal_peak_weights() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["qfunc", "--theta", "pi/4", "--phi", "-pi/8"], dir.path());
    let summary = json(&dir.path().join("qfunc_summary.json"));
    let stages = summary["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 3);
    let prepared = &stages[1]["superposition"];
    let w = prepared["weight_positive"].as_f64().unwrap();
    assert!((w - 0.5).abs() < 1e-3);
    for stage in stages {
        let file = format!("{}.csv", stage["file"].as_str().unwrap());
        let header = fs::read_to_string(dir.path().join(file)).unwrap();
        assert!(header.starts_with("x,p,q_superposition,q_mixture\n"));
    }
    let measured_sup = stages[2]["superposition"]["weight_positive"].as_f64().unwrap();
    let measured_mix = stages[2]["mixture"]["weight_positive"].as_f64().unwrap();
    assert!((measured_sup - measured_mix).abs() > 0.2);
}

#[test]
fn sequence_flags_macroscopic_divergence() {
    let bell = tempfile::tempdir().unwrap();
    let mix = tempfile::tempdir().unwrap();
    ok(&["sequence", "--state", "bell", "--at", "pi/2,pi/4", "--at", "0,0"], bell.path());
    ok(&["sequence", "--state", "mix", "--at", "pi/2,pi/4", "--at", "0,0"], mix.path());
    let summary = json(&mix.path().join("sequence_summary.json"));
    let snaps = summary["snapshots"].as_array().unwrap();
    assert_eq!(snaps[0]["macroscopic_divergence"], true);
    assert_eq!(snaps[1]["macroscopic_divergence"], false);
    assert!(snaps[1]["sup_difference"].as_f64().unwrap() < 5e-4);
    let b = rows(&bell.path().join("sequence_pi_2_pi_4.csv"));
    let m = rows(&mix.path().join("sequence_pi_2_pi_4.csv"));
    assert_eq!(b.len(), 301 * 301);
    let diff = b.iter().zip(&m).map(|(x, y)| (x[2] - y[2]).abs()).fold(0.0, f64::max);
    assert!(diff > 1e-3);
}
