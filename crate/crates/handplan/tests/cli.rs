//! Exit-code and output contract of the installed binary, driven end to end.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_handplan"))
        .args(args)
        .output()
        .expect("spawn handplan binary")
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn help_and_version_exit_zero() {
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("Usage"));

    let version = run(&["--version"]);
    assert_eq!(version.status.code(), Some(0));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let output = run(&["solve", "--no-such-flag"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("--no-such-flag"));
}

#[test]
fn malformed_scenario_json_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, r#"{"bogus": true}"#).unwrap();
    let out = dir.path().join("bundle");
    let output = run(&[
        "solve",
        "--scenario",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn missing_scenario_file_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bundle");
    let output = run(&[
        "solve",
        "--scenario",
        "/no/such/scenario.json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn unreachable_target_fails_naming_the_finger() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bundle");
    let scenario = fixture("unreachable_translation.json");
    let output = run(&[
        "plan",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    let message = stderr(&output);
    assert!(message.contains("finger 0"), "stderr: {message}");
    assert!(message.contains("outside reachable range"), "stderr: {message}");
}

#[test]
fn identity_solve_emits_one_trivial_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bundle");
    let scenario = fixture("identity_1f.json");
    let output = run(&[
        "solve",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let csv = std::fs::read_to_string(out.join("configurations.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2, "header plus one stay-put row");
}

#[test]
fn solve_writes_the_complete_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bundle");
    let scenario = fixture("circle_2f_roll10.json");
    let output = run(&[
        "solve",
        "--scenario",
        scenario.to_str().unwrap(),
        "--count",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    for file in [
        "configurations.csv",
        "weights.csv",
        "clusters.csv",
        "workspace.svg",
        "report.txt",
        "trace.csv",
    ] {
        assert!(out.join(file).is_file(), "{file} missing from the bundle");
    }
    let csv = std::fs::read_to_string(out.join("configurations.csv")).unwrap();
    assert_eq!(
        csv.lines().count(),
        11,
        "header plus five configurations for each of two fingers"
    );
    let report = std::fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(report.contains("attempts"), "report: {report}");
}

#[test]
fn cluster_prints_centroids_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bundle");
    let scenario = fixture("cube_b2f.json");
    let output = run(&[
        "cluster",
        "--scenario",
        scenario.to_str().unwrap(),
        "--count",
        "20",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("cluster 0: population"), "stdout: {text}");
    assert!(text.contains("inertia:"), "stdout: {text}");
}

#[test]
fn report_prints_the_suite_table_to_stdout() {
    let scenario = fixture("sphere_b2f.json");
    let output = run(&[
        "report",
        "--scenario",
        scenario.to_str().unwrap(),
        "--reps",
        "2",
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("mean_rel_err"), "stdout: {text}");
    assert!(text.contains("sphere_b2f"), "stdout: {text}");
}

#[test]
fn sweep_without_a_sweep_block_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bundle");
    let scenario = fixture("identity_1f.json");
    let output = run(&[
        "sweep",
        "--scenario",
        scenario.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("sweep"), "stderr: {}", stderr(&output));
}
