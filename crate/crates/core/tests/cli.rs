use std::path::Path;
use std::process::Command;

use hhinv::report::VerificationReport;
use serde_json::Value;

fn hhinv() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hhinv"))
}

fn read_report(path: &Path) -> VerificationReport {
    VerificationReport::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn only_filter_selects_one_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = hhinv()
        .args(["verify", "--only", "series-identity", "--dims", "3", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report = read_report(&out);
    assert_eq!(report.checks.len(), 1);
    assert_eq!(report.checks[0].family, "series-identity");
    assert_eq!(report.checks[0].params["n"], 3);
}

#[test]
fn json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = hhinv()
        .args(["verify", "--only", "d-recurrence,d-linearity", "--dims", "3,6", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v["config"].is_object());
    assert_eq!(v["config"]["seed"], 42);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4);
    for c in checks {
        assert!(c["name"].is_string());
        assert!(c["params"].is_object());
        assert!(c["residual"].is_f64() || c["residual"].is_u64());
        assert!(c["tol"].is_f64());
        assert!(c["pass"].is_boolean());
    }
    assert_eq!(v["summary"]["pass"], 4);
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn csv_output_and_tolerance_override() {
    let output = hhinv()
        .args([
            "verify",
            "--only",
            "moebius-scalar-product",
            "--dims",
            "3",
            "--format",
            "csv",
            "--tol-family",
            "moebius-scalar-product=1e-30",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let text = String::from_utf8(output.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][4], "1e-30");
    assert_eq!(&rows[0][5], "false");
}

#[test]
fn conditioning_failure_is_reported() {
    let output = hhinv()
        .args([
            "verify",
            "--only",
            "peter-weyl",
            "--dims",
            "3",
            "--mmax",
            "12",
            "--radius",
            "0.2",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let report = VerificationReport::from_json(&String::from_utf8(output.stdout).unwrap()).unwrap();
    let c = &report.checks[0];
    assert!(!c.pass);
    assert!(c.message.as_ref().unwrap().contains("amplifies"));
}

#[test]
fn configuration_errors_exit_before_running() {
    for args in [
        &["verify", "--dims", "2"][..],
        &["verify", "--mmax", "0"],
        &["verify", "--radius", "1.5"],
        &["verify", "--only", "no-such-family"],
        &["verify", "--tol-family", "zonal-recurrence"],
        &["verify", "--format", "xml"],
        &["verify", "--quad-order", "2"],
    ] {
        let output = hhinv().args(args).output().unwrap();
        assert_eq!(output.status.code(), Some(2), "{args:?}");
        assert!(output.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("r{threads}.json"));
        let status = hhinv()
            .env("HHINV_THREADS", threads)
            .args([
                "verify",
                "--dims",
                "3,4",
                "--only",
                "f-constancy,moebius-pair-integral,zonal-generating",
                "--out",
            ])
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        texts.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}
