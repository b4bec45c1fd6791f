//! Black-box tests of the installed binary: every command is driven
//! through its real argv surface and checked on bytes and exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_expseries"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

/// CSV of y = i*i at t = 1..=n.
fn square_csv(dir: &Path, n: usize) -> PathBuf {
    let mut text = String::from("t,value\n");
    for i in 1..=n {
        text.push_str(&format!("{},{}\n", i, i * i));
    }
    let path = dir.join("input.csv");
    fs::write(&path, text).unwrap();
    path
}

fn fit_gdp_model(dir: &Path) -> PathBuf {
    let path = dir.join("gdp_model.json");
    let output = run(&[
        "fit",
        "--dataset",
        "gdp_hu_eq1",
        "--terms",
        "15",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    path
}

#[test]
fn smooth_shortens_by_two_rows() {
    let dir = TempDir::new().unwrap();
    let input = square_csv(dir.path(), 14);
    let out_path = dir.path().join("smoothed.csv");
    let output = run(&[
        "smooth",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let text = fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,value");
    assert_eq!(lines.len(), 1 + 12);
}

#[test]
fn smooth_of_dataset_goes_to_stdout() {
    let output = run(&["smooth", "--dataset", "gdp_hu_eq1"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert_eq!(text.lines().count(), 1 + 28);
    // First centroid of (1, 37.33), (2, 40.33), (3, 43).
    assert!(
        text.lines().nth(1).unwrap().starts_with("2,40.22"),
        "{text}"
    );
}

#[test]
fn smooth_rejects_too_short_input() {
    let dir = TempDir::new().unwrap();
    let input = square_csv(dir.path(), 2);
    let output = run(&["smooth", "--input", input.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("error"), "{}", stderr(&output));
}

#[test]
fn smooth_applies_multiple_passes() {
    let dir = TempDir::new().unwrap();
    let input = square_csv(dir.path(), 14);
    let output = run(&[
        "smooth",
        "--input",
        input.to_str().unwrap(),
        "--passes",
        "3",
    ]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout(&output).lines().count(), 1 + 8);
}

#[test]
fn fit_writes_model_and_summary() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("exp.csv");
    fs::write(
        &input,
        format!(
            "t,value\n1,{}\n2,{}\n",
            3.0 * f64::exp(0.1),
            3.0 * f64::exp(0.2)
        ),
    )
    .unwrap();
    let model_path = dir.path().join("model.json");
    let output = run(&[
        "fit",
        "--input",
        input.to_str().unwrap(),
        "--terms",
        "1",
        "--output",
        model_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    assert!(stdout(&output).contains("max |residual|"));

    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&model_path).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    let term = &doc["terms"][0];
    assert!((term["amp"][0].as_f64().unwrap() - 3.0).abs() < 1e-10);
    assert!((term["exp"][0].as_f64().unwrap() - 0.1).abs() < 1e-10);
}

#[test]
fn fit_rejects_odd_length_in_exact_mode() {
    let dir = TempDir::new().unwrap();
    let input = square_csv(dir.path(), 29);
    let output = run(&[
        "fit",
        "--input",
        input.to_str().unwrap(),
        "--terms",
        "15",
        "--output",
        dir.path().join("m.json").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
    let message = stderr(&output);
    assert!(message.contains("29"), "{message}");
    assert!(message.contains("30"), "{message}");
}

#[test]
fn fit_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = fs::read(fit_gdp_model(dir.path())).unwrap();
    let dir2 = TempDir::new().unwrap();
    let b = fs::read(fit_gdp_model(dir2.path())).unwrap();
    assert_eq!(a, b);
}

#[test]
fn eval_covers_the_inclusive_grid() {
    let dir = TempDir::new().unwrap();
    let model = fit_gdp_model(dir.path());
    let output = run(&[
        "eval",
        model.to_str().unwrap(),
        "--from",
        "1",
        "--to",
        "30",
        "--step",
        "1",
    ]);
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,re,im");
    assert_eq!(lines.len(), 1 + 30);

    // Node values reproduce the tabulated series.
    let row_17: Vec<f64> = lines[17]
        .split(',')
        .map(|field| field.parse().unwrap())
        .collect();
    assert_eq!(row_17[0], 17.0);
    assert!((row_17[1] - 143.0).abs() <= 1e-6, "{}", lines[17]);
    assert!(row_17[2].abs() <= 1e-9);
}

#[test]
fn eval_with_equal_endpoints_is_a_single_row() {
    let dir = TempDir::new().unwrap();
    let model = fit_gdp_model(dir.path());
    let output = run(&["eval", model.to_str().unwrap(), "--from", "7", "--to", "7"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout(&output).lines().count(), 1 + 1);
}

#[test]
fn eval_rejects_a_zero_step() {
    let dir = TempDir::new().unwrap();
    let model = fit_gdp_model(dir.path());
    let output = run(&[
        "eval",
        model.to_str().unwrap(),
        "--from",
        "1",
        "--to",
        "2",
        "--step",
        "0",
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("step"), "{}", stderr(&output));
}

#[test]
fn report_prints_valid_json() {
    let dir = TempDir::new().unwrap();
    let model = fit_gdp_model(dir.path());
    let output = run(&["report", model.to_str().unwrap(), "--dataset", "gdp_hu_eq1"]);
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert!(doc["max_abs_residual"].as_f64().unwrap() <= 1e-6 * 172.33);
    assert!(doc["max_imag"].as_f64().unwrap() <= 1e-9 * 172.33);
    assert_eq!(doc["nodes"].as_array().unwrap().len(), 30);
    for kind in ["chebyshev", "robust_count", "l1", "ls"] {
        assert!(doc["losses"][kind].is_number(), "missing loss {kind}");
    }
}

#[test]
fn plot_draws_markers_and_curve_deterministically() {
    let dir = TempDir::new().unwrap();
    let model = fit_gdp_model(dir.path());
    let chart = dir.path().join("chart.svg");
    let args = [
        "plot",
        model.to_str().unwrap(),
        "--dataset",
        "gdp_hu_eq1",
        "--output",
        chart.to_str().unwrap(),
    ];
    assert_eq!(exit_code(&run(&args)), 0);
    let first = fs::read(&chart).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    assert_eq!(text.matches("class=\"marker\"").count(), 30);
    assert_eq!(text.matches("<polyline").count(), 1);

    assert_eq!(exit_code(&run(&args)), 0);
    assert_eq!(
        fs::read(&chart).unwrap(),
        first,
        "plot must be reproducible"
    );
}

#[test]
fn plot_rejects_an_empty_model() {
    let dir = TempDir::new().unwrap();
    let model = dir.path().join("empty.json");
    fs::write(
        &model,
        "{\"schema_version\": 1, \"dt\": 1.0, \"terms\": []}\n",
    )
    .unwrap();
    let output = run(&[
        "plot",
        model.to_str().unwrap(),
        "--dataset",
        "gdp_hu_eq1",
        "--output",
        dir.path().join("chart.svg").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn year_origin_maps_years_to_unit_abscissas() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("years.csv");
    fs::write(
        &input,
        format!(
            "year,value\n2001,{}\n2002,{}\n",
            3.0 * f64::exp(0.1),
            3.0 * f64::exp(0.2)
        ),
    )
    .unwrap();
    let model = dir.path().join("model.json");
    let output = run(&[
        "fit",
        "--input",
        input.to_str().unwrap(),
        "--year-origin",
        "2000",
        "--terms",
        "1",
        "--output",
        model.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&model).unwrap()).unwrap();
    assert!((doc["terms"][0]["exp"][0].as_f64().unwrap() - 0.1).abs() < 1e-10);
}

#[test]
fn input_and_dataset_are_mutually_exclusive() {
    let dir = TempDir::new().unwrap();
    let input = square_csv(dir.path(), 6);
    let output = run(&[
        "smooth",
        "--input",
        input.to_str().unwrap(),
        "--dataset",
        "gdp_hu_eq1",
    ]);
    assert_eq!(exit_code(&output), 2);
    let output = run(&["smooth"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn demo_reproduces_the_reference_table() {
    let dir = TempDir::new().unwrap();
    let output = run(&["demo-gdp", "--output", dir.path().to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let text = stdout(&output);
    let row_2008 = text.lines().find(|line| line.contains("2008")).unwrap();
    assert!(row_2008.contains("143.000000"), "{row_2008}");
    assert!(text.contains("smoothing comparison"));
    assert!(dir.path().join("gdp_hu_eq1_model.json").exists());
    assert!(dir.path().join("gdp_hu_eq1_fit.svg").exists());
}

#[test]
fn demo_no_smooth_skips_the_comparison() {
    let dir = TempDir::new().unwrap();
    let output = run(&[
        "demo-gdp",
        "--no-smooth",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    assert!(!stdout(&output).contains("smoothing comparison"));
}

#[test]
fn demo_runs_on_the_table_variant() {
    let dir = TempDir::new().unwrap();
    let output = run(&[
        "demo-gdp",
        "--dataset",
        "gdp_hu_table1",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.lines().any(|line| line.starts_with("1992")), "{text}");
    assert!(dir.path().join("gdp_hu_table1_model.json").exists());
}

#[test]
fn demo_rejects_unknown_datasets() {
    let output = run(&["demo-gdp", "--dataset", "nope"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("nope"));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let output = run(&["smooth", "--dataset", "gdp_hu_eq1", "--frobnicate"]);
    assert_eq!(exit_code(&output), 2);
}
