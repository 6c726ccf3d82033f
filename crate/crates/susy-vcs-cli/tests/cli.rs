//! External-interface contract: subcommands, exit codes, file formats,
//! config precedence, and determinism of the emitted report.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_susy-vcs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn report(dir: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join("report.json")).expect("report.json exists");
    serde_json::from_str(&text).expect("report parses")
}

fn statuses(rep: &serde_json::Value, status: &str) -> usize {
    rep["entries"]
        .as_array()
        .expect("entries array")
        .iter()
        .filter(|e| e["status"].as_str() == Some(status))
        .count()
}

#[test]
fn verify_all_passes_and_reports_flagged_discrepancies() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify-all", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let rep = report(dir.path());
    assert_eq!(rep["schema_version"], 1);
    assert_eq!(statuses(&rep, "fail"), 0);
    assert!(statuses(&rep, "pass") >= 30);
    // Known source-text discrepancies surface as flagged, never as fail.
    assert!(statuses(&rep, "flagged") >= 5);
    assert_eq!(
        rep["summary"]["fail"].as_u64(),
        Some(0),
        "summary disagrees with entries"
    );
    let text = stdout(&out);
    assert!(text.contains("[pass   ]"));
    assert!(text.contains("[flagged]"));
    assert!(text.contains("0 fail"));
}

#[test]
fn reports_are_deterministic_for_a_fixed_config_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify-all", "--seed", "13", "--out"];
    let out = bin().args(args).arg(dir.path()).output().unwrap();
    assert!(out.status.success());
    let first = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    std::thread::sleep(std::time::Duration::from_millis(1100));
    let out = bin().args(args).arg(dir.path()).output().unwrap();
    assert!(out.status.success());
    let second = std::fs::read_to_string(dir.path().join("report.json")).unwrap();

    let strip = |text: &str| -> (String, String) {
        let mut body = String::new();
        let mut stamp = String::new();
        for line in text.lines() {
            if line.contains("generated_unix") {
                stamp = line.to_string();
            } else {
                body.push_str(line);
                body.push('\n');
            }
        }
        (body, stamp)
    };
    let (body1, stamp1) = strip(&first);
    let (body2, stamp2) = strip(&second);
    assert_ne!(stamp1, stamp2, "timestamps should differ across runs");
    assert_eq!(body1, body2, "report body must be byte-identical");
}

#[test]
fn changing_the_seed_moves_the_spot_check_points() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    assert!(bin()
        .args(["verify-all", "--seed", "1", "--out"])
        .arg(d1.path())
        .output()
        .unwrap()
        .status
        .success());
    assert!(bin()
        .args(["verify-all", "--seed", "2", "--out"])
        .arg(d2.path())
        .output()
        .unwrap()
        .status
        .success());
    let m1 = report(d1.path());
    let m2 = report(d2.path());
    let spot = |rep: &serde_json::Value| -> f64 {
        rep["entries"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["name"].as_str().unwrap().contains("random interior"))
            .expect("spot-check entry")["metric"]
            .as_f64()
            .unwrap()
    };
    assert_ne!(spot(&m1), spot(&m2), "seed did not reach the spot checks");
}

#[test]
fn config_file_overrides_flags_and_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.json");
    std::fs::write(&conf, r#"{"frame_tol": 1e-6, "seed": 42}"#).unwrap();
    let out = bin()
        .args(["moments", "--model", "oscillator"])
        .arg("--config")
        .arg(&conf)
        .args(["--frame-tol", "1e-3", "--seed", "7", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let rep = report(dir.path());
    assert_eq!(rep["config"]["frame_tol"].as_f64(), Some(1e-6));
    assert_eq!(rep["config"]["seed"].as_u64(), Some(42));

    std::fs::write(&conf, r#"{"frame_tolerance": 1e-6}"#).unwrap();
    let out = bin()
        .args(["verify-all", "--config"])
        .arg(&conf)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "unknown key must be a usage error");

    std::fs::write(&conf, r#"{"moment_tol": 0.0}"#).unwrap();
    let out = bin()
        .args(["verify-all", "--config"])
        .arg(&conf)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "zero tolerance must be rejected");

    std::fs::write(&conf, r#"{"n_trunc": 1}"#).unwrap();
    let out = bin()
        .args(["verify-all", "--config"])
        .arg(&conf)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "truncation below 2 must be rejected");
}

#[test]
fn out_dir_env_var_is_honored_and_beaten_by_the_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["moments", "--model", "oscillator"])
        .env("SUSY_VCS_OUT", env_dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env_dir.path().join("report.json").is_file());

    let flag_dir = tempfile::tempdir().unwrap();
    let unused_env = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["moments", "--model", "oscillator", "--out"])
        .arg(flag_dir.path())
        .env("SUSY_VCS_OUT", unused_env.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(flag_dir.path().join("report.json").is_file());
    assert!(
        !unused_env.path().join("report.json").exists(),
        "explicit --out must beat the environment"
    );
}

#[test]
fn spectrum_writes_levels_with_the_lowest_upper_partner_at_three_eighths() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["spectrum", "--m", "1", "--ell", "1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let csv = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("model,m,ell,n,E_numeric,E_closed,rel_err")
    );
    let first: Vec<&str> = lines.next().expect("n = 0 row").split(',').collect();
    assert_eq!(&first[..4], &["landau", "1", "1", "0"]);
    let e0: f64 = first[4].parse().unwrap();
    assert!((e0 - 0.375).abs() < 2e-3, "lowest level {e0}");
}

#[test]
fn spectrum_scores_the_zero_level_absolutely() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["spectrum", "--m", "2", "--ell", "0", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let csv = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    let first: Vec<&str> = csv.lines().nth(1).expect("n = 0 row").split(',').collect();
    let e_closed: f64 = first[5].parse().unwrap();
    let rel: f64 = first[6].parse().unwrap();
    let e_num: f64 = first[4].parse().unwrap();
    assert_eq!(e_closed, 0.0);
    // With a vanishing reference the last column degrades to the
    // absolute deviation (columns round to different digit counts).
    assert!(rel > 0.0);
    assert!((rel / e_num.abs() - 1.0).abs() < 1e-4, "rel {rel}, |E| {e_num}");
}

#[test]
fn spectrum_rejects_grids_outside_the_preconditions() {
    let out = run(&["spectrum", "--m", "1", "--ell", "1", "--h", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["spectrum", "--m", "1", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(2), "ell is 0 or 1");
    let out = run(&["spectrum", "--m", "0", "--ell", "1"]);
    assert_eq!(out.status.code(), Some(2), "m starts at 1");
}

#[test]
fn vcs_evaluates_the_oscillator_state_and_frame() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["vcs", "--model", "oscillator", "--z", "1,0", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("vcs.json")).unwrap())
            .unwrap();
    // The two-sector normalization at z = 1: 1 + 2 sum 1/n! = 2e - 1.
    let norm = doc["normalization"].as_f64().unwrap();
    assert!(
        (norm - 4.43656365691809).abs() < 1e-9,
        "normalization {norm}"
    );
    let frame = std::fs::read_to_string(dir.path().join("frame.csv")).unwrap();
    assert!(frame.starts_with("row,col,value,deviation"));
    let rep = report(dir.path());
    assert_eq!(statuses(&rep, "fail"), 0);
}

#[test]
fn vcs_fails_cleanly_outside_the_convergence_disc() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["vcs", "--model", "landau", "--m", "1", "--z", "0.9,0", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    // A numeric violation is a fail entry with exit 1, not a usage error.
    assert_eq!(out.status.code(), Some(1));
    let rep = report(dir.path());
    assert_eq!(statuses(&rep, "fail"), 1);

    let out = run(&["vcs", "--model", "oscillator", "--z", "banana"]);
    assert_eq!(out.status.code(), Some(2), "malformed point is a usage error");
}

#[test]
fn moments_fit_writes_the_measure_and_moment_table() {
    let dir = tempfile::tempdir().unwrap();
    let targets = dir.path().join("targets.txt");
    std::fs::write(&targets, "1 1 2 6 24 120\n").unwrap();
    let out = bin()
        .args(["moments", "--fit", "--targets"])
        .arg(&targets)
        .args(["--grid", "6,48", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let rep = report(dir.path());
    assert_eq!(statuses(&rep, "fail"), 0);

    let measure: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("measure.json")).unwrap())
            .unwrap();
    assert!(measure["atoms"].is_array());
    assert_eq!(measure["support_radius"].as_f64(), Some(6.0));

    let csv = std::fs::read_to_string(dir.path().join("moments.csv")).unwrap();
    assert!(csv.starts_with("n,computed,target,rel_err"));
    assert_eq!(csv.lines().count(), 7, "header plus one row per target");
    for line in csv.lines().skip(1) {
        let rel: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!(rel < 1e-6, "row {line} off");
    }

    // Fitting requires both the targets and the grid.
    let out = run(&["moments", "--fit", "--grid", "6,48"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["moments", "--fit", "--targets"])
        .arg(&targets)
        .args(["--grid", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "grid needs R,K");
}

#[test]
fn moments_rejects_malformed_target_files() {
    let dir = tempfile::tempdir().unwrap();
    let targets = dir.path().join("targets.txt");
    std::fs::write(&targets, "1 1 -2 6\n").unwrap();
    let out = bin()
        .args(["moments", "--fit", "--targets"])
        .arg(&targets)
        .args(["--grid", "6,48", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "negative moment is malformed");
}

#[test]
fn residuals_cover_both_examples_including_negative_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["residuals", "--example", "quartic", "--param", "-3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let csv = std::fs::read_to_string(dir.path().join("residuals.csv")).unwrap();
    assert!(csv.starts_with("example,k_or_m,window,residual"));
    assert!(csv.contains("quartic,-3,"));

    let out = bin()
        .args(["residuals", "--example", "landau-ground", "--param", "2", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let csv = std::fs::read_to_string(dir.path().join("residuals.csv")).unwrap();
    assert!(csv.contains("landau-ground-lowering,2,"));
    assert!(csv.contains("landau-ground-hamiltonian,2,"));
}

#[test]
fn algebra_verifies_a_superpotential_file_and_flags_the_shortened_form() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("w.json");
    std::fs::write(
        &spec,
        r#"{"label": "inverse-x-file",
            "w1": [{"a": -1, "b": 0, "re": "-1", "im": "0"}],
            "w2": []}"#,
    )
    .unwrap();
    let out = bin()
        .args(["algebra", "--superpotential"])
        .arg(&spec)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let rep = report(dir.path());
    assert_eq!(statuses(&rep, "fail"), 0);
    assert!(statuses(&rep, "pass") >= 16, "full relation table expected");
    assert_eq!(statuses(&rep, "flagged"), 1, "shortened-form discrepancy");

    std::fs::write(
        &spec,
        r#"{"label": "bad", "w1": [{"a": 0, "b": 0, "re": "1/0", "im": "0"}], "w2": []}"#,
    )
    .unwrap();
    let out = bin()
        .args(["algebra", "--superpotential"])
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "zero denominator is malformed");

    std::fs::write(&spec, r#"{"label": "bad", "w1": [], "w2": [], "w3": []}"#).unwrap();
    let out = bin()
        .args(["algebra", "--superpotential"])
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "unknown field is malformed");
}

#[test]
fn export_matrix_writes_dense_text() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["export-matrix", "--which", "h-susy", "--n", "6", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let text = std::fs::read_to_string(dir.path().join("matrix-h-susy.txt")).unwrap();
    let mut lines = text.lines();
    let head: Vec<usize> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(head.len(), 2);
    assert_eq!(head[0], head[1], "square operator");
    assert_eq!(text.lines().count(), 1 + head[0], "one line per row");
    let row2: Vec<f64> = text
        .lines()
        .nth(2)
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(row2[1], 1.0, "oscillator level 1 sits at energy 1");
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = run(&["verify-all", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}
