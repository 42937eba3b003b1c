//! End-to-end checks of the `qfog` binary: output bytes, schema, exit codes
//! and flag/file precedence.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qfog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfog"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn sweep_output_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).display().to_string();
    let base = [
        "sweep",
        "--mode",
        "ratio-cs",
        "--var",
        "phi",
        "--from",
        "0",
        "--to",
        "6.283185307179586",
        "--steps",
        "101",
        "--m",
        "10",
        "--alpha",
        "1",
        "--y",
        "1",
        "--gamma",
        "1",
    ];

    let mut runs = Vec::new();
    for (name, extra) in [
        ("a.csv", vec![]),
        ("b.csv", vec![]),
        ("t1.csv", vec!["--threads", "1"]),
        ("t4.csv", vec!["--threads", "4"]),
    ] {
        let out = path(name);
        let mut args: Vec<&str> = base.to_vec();
        args.extend(extra);
        args.extend(["--out", &out]);
        let result = qfog(&args);
        assert_eq!(
            code(&result),
            0,
            "stderr: {}",
            String::from_utf8_lossy(&result.stderr)
        );
        runs.push(fs::read(&out).unwrap());
    }
    assert_eq!(runs[0], runs[1], "two identical runs differ");
    assert_eq!(runs[0], runs[2], "thread count 1 changed the bytes");
    assert_eq!(runs[0], runs[3], "thread count 4 changed the bytes");
}

#[test]
fn csv_schema_is_stable() {
    let result = qfog(&[
        "sweep",
        "--mode",
        "pacs-sensitivity",
        "--var",
        "phi",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "4",
        "--m",
        "2",
    ]);
    assert_eq!(code(&result), 0);
    let text = stdout(&result);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "phi,sensitivity,m,alpha,y,gamma");
    assert_eq!(lines.len(), 5);
    assert!(text.ends_with('\n') && !text.contains('\r'));
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 6);
        assert!(!line.ends_with(','), "trailing separator in {line}");
    }
    // 17 significant digits round-trip: re-parse and re-format
    let first: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(format!("{first:.16e}"), lines[1].split(',').nth(1).unwrap());
}

#[test]
fn exact_signal_zeros_render_inf_and_indeterminate() {
    // alpha = 0 with additions keeps the probe mean at zero: divergent rows
    let result = qfog(&[
        "sweep",
        "--mode",
        "pacs-sensitivity",
        "--var",
        "phi",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "3",
        "--m",
        "3",
        "--alpha",
        "0",
        "--y",
        "0",
    ]);
    assert_eq!(code(&result), 0);
    for line in stdout(&result).lines().skip(1) {
        assert_eq!(line.split(',').nth(1).unwrap(), "inf");
    }

    // the all-vacuum comparison is 0/0 everywhere
    let result = qfog(&[
        "sweep", "--mode", "ratio-cs", "--var", "phi", "--from", "0", "--to", "1", "--steps", "3",
        "--m", "0", "--alpha", "0", "--y", "0",
    ]);
    assert_eq!(code(&result), 0);
    for line in stdout(&result).lines().skip(1) {
        assert_eq!(line.split(',').nth(1).unwrap(), "indeterminate");
    }
}

#[test]
fn json_format_emits_rows() {
    let result = qfog(&[
        "sweep", "--mode", "ratio-ss", "--var", "phi", "--from", "0", "--to", "1", "--steps", "3",
        "--m", "1", "--format", "json",
    ]);
    assert_eq!(code(&result), 0);
    let text = stdout(&result);
    assert!(text.starts_with("[\n") && text.ends_with("]\n"));
    assert_eq!(text.matches("\"ratio\":").count(), 3);
}

#[test]
fn config_errors_exit_2_with_field_name() {
    let result = qfog(&[
        "sweep", "--mode", "ratio-cs", "--var", "phi", "--from", "0", "--to", "1", "--steps", "1",
    ]);
    assert_eq!(code(&result), 2);
    assert!(String::from_utf8_lossy(&result.stderr).contains("steps"));

    let result = qfog(&["sweep", "--mode", "no-such"]);
    assert_eq!(code(&result), 2);
    assert!(String::from_utf8_lossy(&result.stderr).contains("mode"));

    let result = qfog(&["sweep", "--mode", "pacs-sensitivity", "--gamma", "0"]);
    assert_eq!(code(&result), 2);
    assert!(String::from_utf8_lossy(&result.stderr).contains("gamma"));
}

#[test]
fn config_file_supplies_defaults_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    fs::write(
        &config,
        "mode=ratio-cs\nvar=phi\nfrom=0\nto=1\nsteps=3\nm=10\ngamma=0.5\n",
    )
    .unwrap();
    let config = config.display().to_string();

    let from_file = qfog(&["sweep", "--config", &config]);
    assert_eq!(code(&from_file), 0);
    let text = stdout(&from_file);
    assert!(
        text.lines().nth(1).unwrap().contains(",10,"),
        "m from file: {text}"
    );

    let overridden = qfog(&["sweep", "--config", &config, "--m", "0"]);
    let text = stdout(&overridden);
    assert!(
        text.lines().nth(1).unwrap().contains(",0,"),
        "m overridden: {text}"
    );
}

#[test]
fn optimize_reports_the_dip_and_flat_objectives_fail() {
    let result = qfog(&[
        "optimize",
        "--mode",
        "ratio-cs",
        "--m",
        "10",
        "--alpha",
        "1",
        "--y",
        "1",
        "--gamma",
        "1",
        "--from",
        "1.5707963267948966",
        "--to",
        "2.199114857512855",
    ]);
    assert_eq!(code(&result), 0);
    let text = stdout(&result);
    let min_line = text.lines().find(|l| l.starts_with("min_value")).unwrap();
    let min: f64 = min_line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(min <= 2e-3, "optimizer min {min}");

    let flat = qfog(&[
        "optimize", "--mode", "ratio-cs", "--m", "0", "--from", "0.1", "--to", "1.0",
    ]);
    assert_eq!(code(&flat), 1);
    assert!(String::from_utf8_lossy(&flat.stderr).contains("no minimum"));
}

#[test]
fn validate_exits_by_outcome() {
    let ok = qfog(&["validate", "--max-m", "4", "--alphas", "0,1", "--dim", "64"]);
    assert_eq!(
        code(&ok),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&ok.stderr)
    );
    let text = stdout(&ok);
    assert!(text.contains("overall: PASS"));
    assert_eq!(text.matches("PASS").count(), 6); // five checks + summary

    // dim too small for alpha=2 probes: truncation is a configuration fault
    let truncated = qfog(&["validate", "--max-m", "4", "--alphas", "2", "--dim", "8"]);
    assert_eq!(code(&truncated), 2);
    assert!(String::from_utf8_lossy(&truncated.stderr).contains("truncated basis"));
}

#[test]
fn unknown_flags_exit_2() {
    let result = qfog(&["sweep", "--mode", "ratio-cs", "--frobnicate", "3"]);
    assert_eq!(code(&result), 2);
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let args = [
        "sweep",
        "--mode",
        "cs-sensitivity",
        "--var",
        "gamma",
        "--from",
        "0.5",
        "--to",
        "1",
        "--steps",
        "3",
    ];
    let to_stdout = qfog(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    let out_str = out.display().to_string();
    with_out.extend(["--out", &out_str]);
    let to_file = qfog(&with_out);
    assert_eq!(code(&to_file), 0);
    assert_eq!(
        stdout(&to_stdout),
        fs::read_to_string(Path::new(&out_str)).unwrap()
    );
}
