//! End-to-end tests of the command-line interface: parameter resolution,
//! output layout, formats, degenerate-point handling, and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bjj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bjj"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

fn meta(dir: &Path, name: &str) -> serde_json::Value {
    serde_json::from_str(&read(dir, name)).unwrap_or_else(|e| panic!("parsing {name}: {e}"))
}

#[test]
fn ground_writes_state_potential_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&[
        "ground",
        "--n",
        "100",
        "--lambda",
        "1.2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let csv = read(dir.path(), "ground.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,x,amplitude,probability,envelope");
    assert_eq!(lines.len(), 102, "header plus one row per Fock state");

    let potential = read(dir.path(), "potential.csv");
    assert_eq!(potential.lines().count(), 202);
    assert!(
        potential.lines().nth(1).unwrap().ends_with(",nan"),
        "effective mass is singular at x = -1"
    );

    let m = meta(dir.path(), "ground.meta.json");
    let results = &m["results"];
    let energy = results["energy"].as_f64().unwrap();
    assert!(
        (energy - -51.1129736470957).abs() < 1e-9,
        "ground energy {energy}"
    );
    let x0 = results["envelope"]["x0"].as_f64().unwrap();
    assert!((x0 - 0.5527707983925667).abs() < 1e-12, "x0 {x0}");
    assert_eq!(results["bimodal"], serde_json::json!(true));
    assert_eq!(m["config"]["n"], serde_json::json!(100));
    assert_eq!(m["tool"]["name"], serde_json::json!("bjj"));
}

#[test]
fn degenerate_transition_point_still_solves() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&[
        "ground",
        "--n",
        "40",
        "--lambda",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let m = meta(dir.path(), "ground.meta.json");
    assert_eq!(m["results"]["degenerate"], serde_json::json!(true));
    assert_eq!(m["results"]["envelope"], serde_json::Value::Null);
    assert_eq!(m["results"]["fit_error"], serde_json::Value::Null);
    assert!(m["results"]["energy"].is_f64(), "the solve itself succeeds");

    let csv = read(dir.path(), "ground.csv");
    let first_row = csv.lines().nth(1).unwrap();
    assert!(first_row.ends_with(",nan"), "envelope column is nan: {first_row}");
}

#[test]
fn sweep_records_per_point_failures_and_continues() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&[
        "sweep",
        "--n",
        "10",
        "--lambda-range=-1:1:0.5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "per-point failures must not abort: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv = read(dir.path(), "sweep.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 6, "header plus five lambda rows");
    assert!(
        lines[1].contains(",nan,nan,"),
        "lambda = -1 row degrades to nan: {}",
        lines[1]
    );
    assert!(
        !lines[3].contains("nan"),
        "lambda = 0 row is fully populated: {}",
        lines[3]
    );

    let notes = meta(dir.path(), "sweep.meta.json")["results"]["notes"].clone();
    assert_eq!(notes.as_array().unwrap().len(), 2, "two invalid lambdas noted");
}

#[test]
fn wigner_emits_grid_with_checks_in_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&[
        "wigner", "--n", "100", "--lambda", "1.2", "--nx", "33", "--np", "41", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let csv = read(dir.path(), "wigner.csv");
    assert_eq!(csv.lines().count(), 1 + 33 * 41);
    assert_eq!(csv.lines().next().unwrap(), "x,p,w");

    let m = meta(dir.path(), "wigner.meta.json");
    let mass = m["results"]["grid_mass"].as_f64().unwrap();
    assert!((mass - 1.0).abs() < 0.05, "coarse-grid mass {mass}");
    assert!(m["results"]["min_w"].as_f64().unwrap() < 0.0);
    assert_eq!(m["config"]["nx"], serde_json::json!(33));
}

#[test]
fn json_format_writes_single_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&[
        "sweep",
        "--n",
        "30",
        "--lambda-range",
        "0:1:0.5",
        "--format",
        "json",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!dir.path().join("sweep.csv").exists(), "json mode writes no CSV");

    let doc = meta(dir.path(), "sweep.json");
    assert_eq!(doc["data"]["sweep"]["columns"][0], serde_json::json!("lambda"));
    assert_eq!(doc["data"]["sweep"]["rows"].as_array().unwrap().len(), 3);
    assert_eq!(doc["meta"]["command"], serde_json::json!("sweep"));
}

#[test]
fn json_wigner_uses_axes_plus_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&[
        "wigner", "--n", "60", "--lambda", "0.5", "--nx", "17", "--np", "19", "--format", "json",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = meta(dir.path(), "wigner.json");
    assert_eq!(doc["data"]["x_axis"].as_array().unwrap().len(), 17);
    assert_eq!(doc["data"]["p_axis"].as_array().unwrap().len(), 19);
    assert_eq!(doc["data"]["values"].as_array().unwrap().len(), 17 * 19);
}

#[test]
fn degenerate_values_become_null_in_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&[
        "ground", "--n", "30", "--lambda", "1", "--format", "json", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc = meta(dir.path(), "ground.json");
    assert_eq!(doc["meta"]["results"]["fit_error"], serde_json::Value::Null);
    let first_row = &doc["data"]["ground"]["rows"][0];
    assert_eq!(first_row[4], serde_json::Value::Null, "envelope cell: {first_row}");
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("run.json");
    fs::write(
        &config_path,
        format!(
            "{{\"n\": 40, \"lambda\": 0.5, \"out\": {:?}}}",
            dir.path().to_str().unwrap()
        ),
    )
    .unwrap();

    let out = bjj(&["ground", "--config", config_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let m = meta(dir.path(), "ground.meta.json");
    assert_eq!(m["config"]["n"], serde_json::json!(40));
    assert_eq!(m["config"]["lambda"], serde_json::json!(0.5));

    let out = bjj(&[
        "ground",
        "--config",
        config_path.to_str().unwrap(),
        "--lambda",
        "2.0",
    ]);
    assert!(out.status.success());
    let m = meta(dir.path(), "ground.meta.json");
    assert_eq!(m["config"]["lambda"], serde_json::json!(2.0), "flag wins");
}

#[test]
fn config_file_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("bad.json");
    fs::write(&config_path, "{\"lambdaa\": 1.0}").unwrap();
    let out = bjj(&[
        "ground",
        "--config",
        config_path.to_str().unwrap(),
        "--n",
        "10",
        "--lambda",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("lambdaa"), "names the bad key: {stderr}");
}

#[test]
fn precision_flag_controls_csv_digits() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&[
        "units", "--n", "100", "--mass", "1.165e-26", "--asc", "-0.21e-9", "--omega-perp",
        "6075.8402134170", "--omega-r", "1306.9025438933", "--precision", "6", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "units.csv");
    let first_cell = csv.lines().nth(1).unwrap().split(',').next().unwrap().to_string();
    let mantissa = first_cell.split('e').next().unwrap();
    assert_eq!(
        mantissa.split('.').nth(1).map(str::len),
        Some(5),
        "six significant digits: {first_cell}"
    );
    assert!(first_cell.starts_with("1.22060e"), "{first_cell}");
}

#[test]
fn missing_parameters_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&["ground", "--lambda", "1.2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("--n"), "{stderr}");

    let out = bjj(&["ground", "--n", "10", "--lambda", "1.2"]);
    assert_eq!(out.status.code(), Some(2), "missing --out");
}

#[test]
fn invalid_values_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let cases: &[&[&str]] = &[
        &["ground", "--n", "1", "--lambda", "1", "--out", dir_arg],
        &["ground", "--n", "10", "--lambda", "-2", "--out", dir_arg],
        &["sweep", "--n", "10", "--lambda-range", "2:1:0.5", "--out", dir_arg],
        &["wigner", "--n", "100", "--lambda", "1", "--out", dir_arg],
        &["wigner", "--n", "100", "--lambda", "2", "--nx", "4", "--out", dir_arg],
        &["units", "--n", "100", "--mass", "1e-26", "--asc", "0.2e-9", "--omega-perp", "6000", "--omega-r", "1300", "--out", dir_arg],
        &["ground", "--n", "10", "--lambda", "1", "--precision", "0", "--out", dir_arg],
        &["ground", "--n", "10", "--lambda", "1", "--bogus", "--out", dir_arg],
    ];
    for args in cases {
        let out = bjj(args);
        assert_eq!(out.status.code(), Some(2), "expected exit 2 for {args:?}");
    }
}

#[test]
fn unconverged_solve_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&[
        "ground",
        "--n",
        "100",
        "--lambda",
        "1e300",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "numerical failure exit code");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("did not converge"), "{stderr}");
}

#[test]
fn thermal_writes_crossover_and_rate_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjj(&[
        "thermal",
        "--n",
        "100",
        "--temp-range",
        "1e-9:5e-9:2e-9",
        "--omega-r",
        "1306.9025438933",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let crossover = read(dir.path(), "crossover.csv");
    let lines: Vec<&str> = crossover.lines().collect();
    assert_eq!(lines[0], "lambda,omega_rad_per_s,alpha,t_c_k,b_c");
    assert_eq!(lines.len(), 21, "default lambda grid 1.1:3:0.1");

    let rates = read(dir.path(), "rates.csv");
    assert_eq!(rates.lines().count(), 1 + 20 * 3);
    assert!(rates.contains("classical") || rates.contains("crossover"));

    let m = meta(dir.path(), "thermal.meta.json");
    assert_eq!(m["config"]["gamma"], serde_json::json!(0.0));
    assert_eq!(m["config"]["threshold"], serde_json::json!(10.0));
    assert_eq!(m["results"]["notes"].as_array().unwrap().len(), 0);
}
