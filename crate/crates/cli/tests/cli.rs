use std::process::{Command, Output};

use serde_json::Value;

const QUICK: [&str; 6] = ["--quad-theta", "32", "--quad-phi", "128", "--tol", "1e-5"];

fn pwcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwcheck")).args(args).output().expect("pwcheck runs")
}

fn verify(extra: &[&str]) -> Output {
    let mut args = vec!["verify"];
    args.extend(extra);
    args.extend(QUICK);
    pwcheck(&args)
}

#[test]
fn json_report_is_byte_identical_across_runs() {
    let a = verify(&["--family", "II", "--b", "3"]);
    let b = verify(&["--family", "II", "--b", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["weight_table"][2], serde_json::json!([0, 0, 4, 0, 1]));
    assert_eq!(v["perverse_table"][2], serde_json::json!([0, 4, 1]));
    assert_eq!(v["period_check"]["grid"]["n_phi"], 128);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let out = verify(&["--family", "I", "--b", "2", "--format", "markdown", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains("| H^2 | 0 | 0 | 1 | 0 | 1 |"));
    assert!(text.contains("Overall: PASS"));
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "family = I\nb = 2\nquad-theta = 32\nquad-phi = 128\ntol = 1e-5\n").unwrap();
    let conf = path.to_str().unwrap();
    let out = pwcheck(&["verify", "--config", conf]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["input"]["b"], 2);
    let out = pwcheck(&["verify", "--config", conf, "--b", "3"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["input"]["b"], 3);
    assert_eq!(v["input"]["family"], "I");
}

#[test]
fn config_file_faults_fail_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fault.conf");
    std::fs::write(&path, "family = II\nb = 2\nfault = intersection:1:0:1:+1\n").unwrap();
    let mut args = vec!["verify", "--config", path.to_str().unwrap()];
    args.extend(QUICK);
    let out = pwcheck(&args);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdicts"]["fibers_valid"], Value::Bool(false));
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        vec!["verify", "--family", "III", "--b", "2"],
        vec!["verify", "--family", "I", "--b", "0"],
        vec!["verify", "--family", "I", "--b", "65"],
        vec!["verify", "--family", "I"],
        vec!["verify", "--family", "I", "--b", "2", "--fault", "weight:9:0:+1"],
        vec!["verify", "--family", "I", "--b", "2", "--quad-phi", "10"],
        vec!["verify", "--family", "I", "--b", "2", "--config", "/nonexistent/pwcheck.conf"],
        vec!["verify", "--b", "two"],
        vec!["sweep", "--family", "I"],
        vec!["tables", "--family", "II"],
    ] {
        assert_eq!(pwcheck(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn divergence_exits_3() {
    let out = pwcheck(&["verify", "--family", "I", "--b", "4", "--quad-theta", "8", "--quad-phi", "8", "--tol", "1e-14"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tables_for_family_zero() {
    let out = pwcheck(&["tables", "--family", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["weight_table"][1], serde_json::json!([0, 0, 2, 0, 0]));
    assert_eq!(v["perverse_table"][1], serde_json::json!([0, 2, 0]));
    let md = pwcheck(&["tables", "--family", "I", "--b", "4", "--format", "markdown"]);
    assert!(String::from_utf8_lossy(&md.stdout).contains("| H^2 | 0 | 3 | 1 |"));
}

#[test]
fn sweep_markdown_lists_every_b() {
    let mut args = vec!["sweep", "--family", "I", "--b-max", "3", "--format", "markdown"];
    args.extend(QUICK);
    let out = pwcheck(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for b in 1..=3 {
        assert!(text.contains(&format!("| {b} |")));
    }
}
