use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn qsuppress(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsuppress")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = qsuppress(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn out_dir(tmp: &TempDir, name: &str) -> PathBuf {
    tmp.path().join(name)
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn prob(rows: &[Vec<String>], label: &str) -> f64 {
    rows.iter().find(|r| r[0] == label).map(|r| r[1].parse().unwrap()).unwrap()
}

fn bundled_instance() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/instances/tsp3.json").to_string()
}

#[test]
fn grover_finds_the_single_target() {
    let tmp = TempDir::new().unwrap();
    let dir = out_dir(&tmp, "g");
    ok(&["grover", "--n", "3", "--targets", "001", "--shots", "4096", "--seed", "1", "--out", dir.to_str().unwrap()]);
    let rows = csv_rows(&dir.join("histogram.csv"));
    assert_eq!(rows.len(), 8);
    assert!((prob(&rows, "001") - 0.9453125).abs() < 1e-11);
    let counts: u64 = rows.iter().map(|r| r[2].parse::<u64>().unwrap()).sum();
    assert_eq!(counts, 4096);
    let summary = json(&dir.join("summary.json"));
    assert_eq!(summary["iterations"], 2);
    assert_eq!(summary["closed_form_probability"], summary["simulated_probability"]);
}

#[test]
fn grover_quarter_register_is_exact() {
    let tmp = TempDir::new().unwrap();
    let dir = out_dir(&tmp, "g");
    ok(&["grover", "--n", "2", "--targets", "11", "--k", "1", "--out", dir.to_str().unwrap()]);
    let rows = csv_rows(&dir.join("histogram.csv"));
    assert!((prob(&rows, "11") - 1.0).abs() < 1e-11);
}

#[test]
fn usage_errors() {
    let tmp = TempDir::new().unwrap();
    let dir = out_dir(&tmp, "g");
    let out = qsuppress(&["grover", "--n", "3", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--targets"));
    assert!(!dir.exists());

    let out = qsuppress(&["grover", "--n", "3", "--targets", "001,01x", "--out", dir.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("01x"));
    assert!(!dir.exists());

    assert_eq!(qsuppress(&["grover", "--bogus"]).status.code(), Some(2));
    assert_eq!(qsuppress(&[]).status.code(), Some(2));
}

#[test]
fn suppress_flattens_the_desired_states() {
    let tmp = TempDir::new().unwrap();
    let dir = out_dir(&tmp, "s");
    ok(&["suppress", "--n", "3", "--undesired", "000,111", "--k", "3", "--out", dir.to_str().unwrap()]);
    let rows = csv_rows(&dir.join("histogram.csv"));
    let rest: Vec<f64> = ["001", "010", "011", "100", "101", "110"].iter().map(|l| prob(&rows, l)).collect();
    assert!(rest.iter().all(|p| (p - rest[0]).abs() < 1e-11));
    assert!(prob(&rows, "000") + prob(&rows, "111") < 0.02);
    let summary = json(&dir.join("summary.json"));
    assert_eq!(summary["undesired_probability_before"], 0.25);
    assert_eq!(summary["sweep"].as_array().unwrap().len(), 4);
}

#[test]
fn suppress_two_qubits_and_zero_rounds() {
    let tmp = TempDir::new().unwrap();
    let dir = out_dir(&tmp, "s2");
    ok(&["suppress", "--n", "2", "--undesired", "00,11", "--out", dir.to_str().unwrap()]);
    let rows = csv_rows(&dir.join("histogram.csv"));
    assert_eq!(prob(&rows, "00"), 0.0);
    assert_eq!(prob(&rows, "11"), 0.0);
    assert_eq!(json(&dir.join("summary.json"))["iterations"], 1);

    let dir = out_dir(&tmp, "s0");
    ok(&["suppress", "--n", "3", "--undesired", "000,111", "--k", "0", "--out", dir.to_str().unwrap()]);
    assert!(csv_rows(&dir.join("histogram.csv")).iter().all(|r| r[1] == "0.125000000000"));

    let everything = "00,01,10,11";
    let out = qsuppress(&["suppress", "--n", "2", "--undesired", everything, "--out", dir.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn depth_sweep_defaults() {
    let tmp = TempDir::new().unwrap();
    let dir = out_dir(&tmp, "d");
    let stdout = ok(&["depth-sweep", "--out", dir.to_str().unwrap()]);
    assert!(stdout.contains("crossover n=3"));
    let rows = csv_rows(&dir.join("depth.csv"));
    assert_eq!(rows.len(), 19);
    assert_eq!(rows[18][..3], ["20", "3145724", "44"]);

    let out = qsuppress(&["depth-sweep", "--n-min", "6", "--n-max", "4", "--out", dir.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn qaoa_compare_is_deterministic_and_favors_the_suppressed_start() {
    let tmp = TempDir::new().unwrap();
    let inst = bundled_instance();
    let run = |name: &str| {
        let dir = out_dir(&tmp, name);
        let args = ["qaoa-compare", "--instance", &inst, "--p", "1", "--budget", "500", "--seed", "1", "--out"];
        let mut args: Vec<&str> = args.to_vec();
        args.push(dir.to_str().unwrap());
        ok(&args);
        dir
    };
    let a = run("a");
    let b = run("b");
    for f in ["comparison.csv", "summary.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    let rows = csv_rows(&a.join("comparison.csv"));
    let uniform = rows.iter().filter(|r| r[0] == "uniform").count();
    let suppressed = rows.iter().filter(|r| r[0] == "suppression").count();
    assert_eq!((uniform, suppressed), (500, 500));

    let s = json(&a.join("summary.json"));
    let p = |arm: &str| s[arm]["optimal_state_probability"].as_f64().unwrap();
    assert!(p("suppression") >= p("uniform"));
    assert_eq!(s["winner"], "suppression");
    assert_eq!(s["optimum"]["energy"], 7.0);
}

#[test]
fn qaoa_compare_without_layers_reports_the_start() {
    let tmp = TempDir::new().unwrap();
    let dir = out_dir(&tmp, "p0");
    ok(&["qaoa-compare", "--p", "0", "--out", dir.to_str().unwrap()]);
    let rows = csv_rows(&dir.join("comparison.csv"));
    assert_eq!(rows.len(), 2);
    let s = json(&dir.join("summary.json"));
    assert_eq!(s["uniform"]["evaluations"], 0);
    assert_eq!(s["uniform"]["optimal_state_probability"], 0.125);
}

#[test]
fn malformed_instance_is_rejected() {
    let tmp = TempDir::new().unwrap();
    let bad = tmp.path().join("bad.json");
    fs::write(&bad, r#"{"cities": 3, "distance": [[0,1,1],[1,0,1],[1,1,0]]}"#).unwrap();
    let dir = out_dir(&tmp, "q");
    let out = qsuppress(&["qaoa-compare", "--instance", bad.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("distance"));
    assert!(!dir.exists());
}

#[test]
fn config_file_replays_a_run_and_flags_override_it() {
    let tmp = TempDir::new().unwrap();
    let first = out_dir(&tmp, "first");
    ok(&["suppress", "--n", "3", "--undesired", "000,111", "--seed", "5", "--out", first.to_str().unwrap()]);

    let cfg_path = first.join("config.json");
    let replay = out_dir(&tmp, "replay");
    ok(&["--config", cfg_path.to_str().unwrap(), "suppress", "--out", replay.to_str().unwrap()]);
    assert_eq!(fs::read(first.join("histogram.csv")).unwrap(), fs::read(replay.join("histogram.csv")).unwrap());

    let other = out_dir(&tmp, "other");
    ok(&["--config", cfg_path.to_str().unwrap(), "suppress", "--k", "1", "--out", other.to_str().unwrap()]);
    assert_eq!(json(&other.join("summary.json"))["iterations"], 1);

    let out = qsuppress(&["--config", cfg_path.to_str().unwrap(), "grover"]);
    assert!(!out.status.success());
}

#[test]
fn qubit_ceiling_from_the_environment() {
    let tmp = TempDir::new().unwrap();
    let dir = out_dir(&tmp, "g");
    let run = |limit: &str| {
        Command::new(env!("CARGO_BIN_EXE_qsuppress"))
            .env("GROVER_SUPPRESS_MAX_QUBITS", limit)
            .args(["grover", "--n", "3", "--targets", "001", "--out", dir.to_str().unwrap()])
            .output()
            .unwrap()
    };
    // register plus ancilla is four qubits
    assert!(!run("3").status.success());
    assert!(run("4").status.success());
    assert!(!run("many").status.success());
}
