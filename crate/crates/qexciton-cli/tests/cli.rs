//! End-to-end tests of the `qexciton` binary: argument handling, exit
//! codes, and file outputs, driven through the compiled executable.

use std::path::Path;
use std::process::{Command, Output};

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_qexciton")
}

fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(exe()).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// A small, fast single-mode scenario (101 grid points).
fn single_config(output: &str) -> String {
    format!(
        r#"{{
            "kind": "single",
            "params": {{
                "omega": "1.75eV",
                "omega_ex": 1.75,
                "g": "200ueV",
                "gamma_ex": "20ueV",
                "gamma_ph": "40ueV",
                "q": 1.01,
                "n": 1,
                "alpha_sq": 9.0
            }},
            "grid": {{"start": 1.7485, "stop": 1.7515, "points": 101}},
            "output": "{output}"
        }}"#
    )
}

/// A small linear-absorption scenario.
fn absorb_config(output: &str) -> String {
    format!(
        r#"{{
            "kind": "absorption_linear",
            "params": {{"omega": 1.5, "omega_ex": "1574meV", "g": "200ueV", "q": 1.0}},
            "grid": {{"start": 1.5735, "stop": 1.5745, "points": 101}},
            "output": "{output}"
        }}"#
    )
}

fn write_config(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn spectrum_single_writes_csv_and_prints_its_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", &single_config("line.csv"));
    let out = run([
        "spectrum",
        "single",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));

    let csv_path = dir.path().join("line.csv");
    assert!(stdout_text(&out).contains("line.csv"), "stdout should list the written path");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("omega_eV,S"));
    assert_eq!(lines.count(), 101, "one data row per grid point");
    assert!(!csv.contains('\r'), "rows end in plain LF");
}

#[test]
fn svg_flag_writes_a_plot_next_to_each_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", &absorb_config("alpha.csv"));
    let out = run([
        "absorb",
        "linear",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--svg",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));

    let csv = std::fs::read_to_string(dir.path().join("alpha.csv")).unwrap();
    assert!(csv.starts_with("omega_eV,alpha1"), "header: {}", csv.lines().next().unwrap());
    let svg = std::fs::read_to_string(dir.path().join("alpha.svg")).unwrap();
    assert!(svg.starts_with("<svg"), "svg starts with its root element");
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn mismatched_config_kind_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", &absorb_config("alpha.csv"));
    // An absorption config fed to the spectrum command is a usage error.
    let out = run(["spectrum", "single", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = stderr_text(&out);
    assert!(err.contains("kind"), "message names the kind mismatch: {err}");
    assert!(err.contains("absorption_linear") && err.contains("single"), "{err}");
}

#[test]
fn malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "broken.json", "{ this is not json");
    let out = run(["spectrum", "single", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("bad config"), "{}", stderr_text(&out));
}

#[test]
fn unknown_config_field_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let text = single_config("x.csv").replace("\"alpha_sq\"", "\"alpha_squared\"");
    let cfg = write_config(dir.path(), "cfg.json", &text);
    let out = run(["spectrum", "single", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("alpha_squared"), "{}", stderr_text(&out));
}

#[test]
fn missing_config_file_exits_two() {
    let out = run(["spectrum", "single", "--config", "/nonexistent/nowhere.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("cannot read config"), "{}", stderr_text(&out));
}

#[test]
fn unknown_preset_exits_two_and_lists_the_catalog() {
    let out = run(["preset", "fig9"]);
    assert_eq!(code(&out), 2);
    let err = stderr_text(&out);
    assert!(err.contains("fig9"), "{err}");
    assert!(err.contains("fig1") && err.contains("fig6"), "available names listed: {err}");
}

#[test]
fn degenerate_operating_point_exits_three() {
    // Zero coupling with identical mode energies and dampings (and an
    // undeformed structure factor, so the exciton line is not shifted)
    // puts both branches on top of each other; the transformation
    // coefficients are undefined there and the run must fail as a
    // numerical error, not a config error.
    let dir = tempfile::tempdir().unwrap();
    let text = single_config("x.csv")
        .replace("\"200ueV\"", "\"0ueV\"")
        .replace("\"20ueV\"", "\"40ueV\"")
        .replace("\"q\": 1.01", "\"q\": 1.0");
    let cfg = write_config(dir.path(), "cfg.json", &text);
    let out = run([
        "spectrum",
        "single",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr_text(&out));
    assert!(stderr_text(&out).contains("degenerate"), "{}", stderr_text(&out));
}

#[test]
fn validate_writes_the_report_file_it_prints() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let out = run([
        "validate",
        "--seed",
        "3",
        "--draws",
        "50",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let printed = stdout_text(&out);
    let written = std::fs::read_to_string(&report).unwrap();
    assert_eq!(printed, written, "stdout and report file carry the same text");
    assert!(written.contains("overall: pass"));
}

#[test]
fn validate_rejects_zero_draws() {
    let out = run(["validate", "--draws", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("--draws"), "{}", stderr_text(&out));
}

#[test]
fn two_mode_spectrum_runs_from_a_config() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{
        "kind": "two_mode",
        "params": {
            "omega": 1.75, "omega_ex1": 1.75, "omega_ex2": 1.77,
            "g": "200ueV",
            "gamma_ex1": "200ueV", "gamma_ex2": "200ueV", "gamma_ph": "45ueV",
            "q1": 1.04, "q2": 1.04, "n1": 1, "n2": 1,
            "alpha_sq": 9.0
        },
        "grid": {"start": 1.745, "stop": 1.775, "points": 301},
        "output": "pair.csv"
    }"#;
    let cfg = write_config(dir.path(), "cfg.json", text);
    let out = run([
        "spectrum",
        "two-mode",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let csv = std::fs::read_to_string(dir.path().join("pair.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("omega_eV,S"));
    let values: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 301);
    assert!(values.iter().all(|v| v.is_finite() && *v >= 0.0));
}
