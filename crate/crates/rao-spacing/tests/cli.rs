//! CLI surface tests driven through the compiled binary.

use std::io::Write;
use std::process::{Command, Output};

fn rao(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rao"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(output: &Output) -> serde_json::Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

fn write_angles(lines: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(lines.as_bytes()).unwrap();
    file
}

#[test]
fn test_subcommand_pigeon_example() {
    let file = write_angles(
        "# pigeon vanishing angles\n20\n135\n145\n165\n170\n200\n300\n325\n335\n350\n350\n350\n355\n",
    );
    let output = rao(&["test", "--file", file.path().to_str().unwrap(), "--unit", "deg"]);
    let value = json_of(&output);
    assert_eq!(value["schema"], "rao-spacing/1");
    assert_eq!(value["n"], 13);
    assert_eq!(value["method"], "gram_charlier");
    assert!((value["statistic_deg"].as_f64().unwrap() - 161.9231).abs() < 1e-3);
    assert!((value["p_value"].as_f64().unwrap() - 0.0786).abs() < 5e-4);
}

#[test]
fn test_subcommand_is_deterministic() {
    let file = write_angles("5\n10\n10\n12\n17\n85\n90\n99\n100\n110\n153\n233\n235\n296\n331\n");
    let path = file.path().to_str().unwrap();
    let a = rao(&["test", "--file", path]);
    let b = rao(&["test", "--file", path]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn test_small_sample_uses_exact_path() {
    let file = write_angles("10\n80\n190\n250\n300\n");
    let output = rao(&["test", "--file", file.path().to_str().unwrap()]);
    let value = json_of(&output);
    assert_eq!(value["method"], "exact_quadrature");
}

#[test]
fn test_empty_file_is_usage_error() {
    let file = write_angles("# nothing here\n");
    let output = rao(&["test", "--file", file.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(output.stdout.is_empty());
}

#[test]
fn test_missing_file_is_usage_error() {
    let output = rao(&["test", "--file", "/nonexistent/angles.txt"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let output = rao(&["test", "--nope", "x"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn critval_matches_published_table() {
    let output = rao(&["critval", "--n", "1000", "--alpha", "0.001"]);
    let value = json_of(&output);
    assert!((value["critical_value_deg"].as_f64().unwrap() - 140.99).abs() <= 0.01);
}

#[test]
fn critval_rejects_bad_alpha() {
    let output = rao(&["critval", "--n", "100", "--alpha", "1.5"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn cdf_subcommand_table_value() {
    let output = rao(&["cdf", "--n", "10", "--t", "120", "--unit", "deg"]);
    let value = json_of(&output);
    assert!((value["cdf"].as_f64().unwrap() - 0.433).abs() <= 5e-4);
    assert_eq!(value["outside_support"], false);
}

#[test]
fn cdf_flags_out_of_support_points() {
    let output = rao(&["cdf", "--n", "10", "--t", "350", "--unit", "deg"]);
    let value = json_of(&output);
    assert_eq!(value["outside_support"], true);
}

#[test]
fn moments_subcommand_schema() {
    let output = rao(&["moments", "--n", "10", "--order", "10"]);
    let value = json_of(&output);
    assert_eq!(value["n"], 10);
    assert_eq!(value["order"], 10);
    assert_eq!(value["raw_moments"].as_array().unwrap().len(), 10);
    assert_eq!(value["raw_cumulants"].as_array().unwrap().len(), 10);
    assert_eq!(value["standardized_cumulants"].as_array().unwrap().len(), 8);
    let mu1 = value["raw_moments"][0].as_f64().unwrap();
    assert!((mu1 - std::f64::consts::TAU * 0.9f64.powi(10)).abs() < 1e-10);
}

#[test]
fn simulate_subcommand_reproducible() {
    let args = [
        "simulate", "--n", "50", "--reps", "200", "--alpha", "0.05", "--alt", "uniform",
        "--seed", "42",
    ];
    let a = rao(&args);
    let b = rao(&args);
    assert_eq!(a.stdout, b.stdout);
    let value = json_of(&a);
    let accept = value["accept"].as_u64().unwrap();
    let reject = value["reject"].as_u64().unwrap();
    assert_eq!(accept + reject, 200);
}

#[test]
fn simulate_fixed_critval_mode() {
    let output = rao(&[
        "simulate", "--n", "100", "--reps", "50", "--alpha", "0.05", "--alt", "vonmises",
        "--kappa", "2.0", "--seed", "7", "--fixed-critval", "150.0",
    ]);
    let value = json_of(&output);
    // kappa = 2 is strongly non-uniform; everything should reject
    assert_eq!(value["reject"], 50);
}
