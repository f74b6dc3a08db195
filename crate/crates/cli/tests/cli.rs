use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wavekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavekit"))
        .args(args)
        .env_remove("WAVEKIT_JOBS")
        .output()
        .expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let mut full = args.to_vec();
    let out = dir.to_str().unwrap();
    full.extend(["--out", out]);
    wavekit(&full)
}

fn records(dir: &Path) -> Vec<Value> {
    std::fs::read_to_string(dir.join("report.jsonl"))
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn summary(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn bessel_table_routes_agree() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["bessel-table", "--nu", "0,0.5,1", "--x-min", "0.5", "--x-max", "10"],
    );
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("bessel_table.csv"));
    assert_eq!(rows.len(), 60);
    for row in rows {
        assert!(row[5].parse::<f64>().unwrap() <= 1e-9);
    }
    assert_eq!(summary(dir.path())["status"], "pass");
}

#[test]
fn half_order_vanishes_at_pi() {
    let dir = tempfile::tempdir().unwrap();
    let pi = std::f64::consts::PI.to_string();
    let out = run_in(dir.path(), &["bessel-table", "--nu", "0.5", "--x", &pi]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("bessel_table.csv"));
    assert!(rows[0][4].parse::<f64>().unwrap().abs() <= 1e-15);
}

#[test]
fn empty_x_range_is_a_config_error() {
    let out = wavekit(&["bessel-table", "--x-min", "2", "--x-max", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x_min/x_max"));
}

#[test]
fn kernel_verify_three_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["kernel-verify", "--dims", "3", "--samples", "50", "--tol", "1e-6"],
    );
    assert_eq!(out.status.code(), Some(0));
    let recs = records(dir.path());
    assert_eq!(recs.len(), 50);
    for r in recs {
        assert!(r["value"].is_number() && r["oracle"].is_number());
    }
}

#[test]
fn kernel_verify_two_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["kernel-verify", "--dims", "2", "--samples", "50", "--tol", "1e-3"],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn coarse_resolution_fails_without_aborting() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["kernel-verify", "--dims", "4", "--samples", "20", "--resolution", "4"],
    );
    assert_eq!(out.status.code(), Some(1));
    let recs = records(dir.path());
    assert_eq!(recs.len(), 20);
    assert!(recs.iter().any(|r| r["status"] == "fail"));
    let s = summary(dir.path());
    assert!(s["max_error"].as_f64().unwrap() > 1e-3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn lemma_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["lemma-verify", "--orders", "0", "--pairs", "2:1,1:2,1.0000001:1"],
    );
    assert_eq!(out.status.code(), Some(0));
    let recs = records(dir.path());
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["status"], "pass");
    assert!((recs[0]["value"].as_f64().unwrap() - 0.57735).abs() < 1e-4);
    assert_eq!(recs[1]["region"], "outside");
    assert_eq!(recs[1]["status"], "pass");
    assert!(recs[1]["value"].as_f64().unwrap().abs() < 5e-3);
    assert_eq!(recs[2]["status"], "skipped");
    assert!(recs[2]["reason"].as_str().unwrap().contains("boundary band"));
}

#[test]
fn solve_at_time_zero_returns_the_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["solve", "--dim", "2", "--times", "0", "--width", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(dir.path());
    assert!(recs.iter().any(|r| r["check"] == "energy"));
    for row in csv_rows(&dir.path().join("solution.csv")) {
        let v: Vec<f64> = row.iter().map(|c| c.parse().unwrap()).collect();
        let phi = (-(v[1] * v[1] + v[2] * v[2]) / 0.5).exp();
        assert!((v[3] - phi).abs() <= 1e-12);
    }
}

#[test]
fn crosscheck_three_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["solve", "--dim", "3", "--method", "crosscheck", "--samples", "5"],
    );
    assert_eq!(out.status.code(), Some(0));
    let s = summary(dir.path());
    assert!(s["max_discrepancy"].as_f64().unwrap() <= 1e-4);
    assert_eq!(records(dir.path()).len(), 5);
}

#[test]
fn crosscheck_two_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["solve", "--dim", "2", "--method", "crosscheck", "--samples", "5"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(summary(dir.path())["max_discrepancy"].as_f64().unwrap() <= 5e-4);
}

#[test]
fn unsupported_pairing_is_rejected() {
    let out = wavekit(&["solve", "--dim", "2", "--method", "kirchhoff"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("method"));
}

#[test]
fn small_box_reports_wraparound() {
    let out = wavekit(&["solve", "--dim", "2", "--half-extent", "3", "--times", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("half_extent"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "seed = 7\n[bessel-table]\nnu = [1.0]\nx = [1.0, 2.0, 3.0]\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = wavekit(&[
        "bessel-table",
        "--config",
        cfg.to_str().unwrap(),
        "--x",
        "4",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out_dir.join("bessel_table.csv"));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0].parse::<f64>().unwrap(), 1.0);
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), 4.0);
}

#[test]
fn config_file_solve_terms() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "[solve]\ndim = 1\ntimes = [1.0]\n\
         [[solve.psi]]\nkind = \"gaussian\"\namplitude = 2.0\ncenter = [0.5]\nwidth = 0.3\n",
    )
    .unwrap();
    let out = run_in(dir.path(), &["solve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn unknown_config_field_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[kernel-verify]\nsampels = 3\n").unwrap();
    let out = wavekit(&["kernel-verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sampels"));
}

#[test]
fn fixed_seed_is_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["lemma-verify", "--samples", "4", "--seed", "11"];
    assert_eq!(run_in(a.path(), &args).status.code(), Some(0));
    assert_eq!(
        run_in(
            b.path(),
            &["--jobs", "1"].iter().chain(&args).copied().collect::<Vec<_>>()
        )
        .status
        .code(),
        Some(0)
    );
    for name in ["report.jsonl", "summary.json"] {
        assert_eq!(
            std::fs::read(a.path().join(name)).unwrap(),
            std::fs::read(b.path().join(name)).unwrap()
        );
    }
}

#[test]
fn stdout_carries_the_report_without_out_dir() {
    let out = wavekit(&["lemma-verify", "--orders", "0", "--pairs", "2:1"]);
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8(out.stdout).unwrap();
    let rec: Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(rec["status"], "pass");
}
