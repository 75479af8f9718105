use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcl"))
        .args(args)
        .env_remove("BCL_DEFAULT_N")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_line(out: &Output) -> String {
    let text = String::from_utf8_lossy(&out.stderr).into_owned();
    assert_eq!(text.trim_end().lines().count(), 1, "stderr: {text}");
    text
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn reals(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|c| c[0].as_f64().unwrap()).collect()
}

#[test]
fn classify_reports_verdict_and_config() {
    let out = bcl(&["classify", "--alpha", "2", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "bcl-report/1");
    assert_eq!(v["command"], "classify");
    assert_eq!(v["config"]["alpha"], 2.0);
    assert_eq!(v["result"]["verdict"], "Bounded+EssentialNormZero");
    assert!(v["result"]["source"].as_str().unwrap().contains("beta = 1 < alpha"));
}

#[test]
fn spectrum_of_cesaro_symbol_file() {
    let dir = tempfile::tempdir().unwrap();
    let sym = write(dir.path(), "cesaro.json", r#"{"terms":[{"a":[1,0],"b_angle":0}],"beta":1}"#);
    let out = bcl(&["spectrum", "--symbol", &sym, "--N", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let eig = reals(&json(&out)["result"]["eigenvalues"]);
    let want = [1.0, 0.5, 1.0 / 3.0, 0.25];
    assert_eq!(eig.len(), 4);
    for (a, b) in eig.iter().zip(want) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn alexander_on_identity() {
    let out = bcl(&["apply", "--beta", "0", "--f", "[0,1]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(reals(&v["result"]["coeffs"]), vec![0.0, 1.0]);
    assert!(v["result"].get("truncated").is_none());
}

#[test]
fn cesaro_image_is_a_marked_truncation() {
    let out = bcl(&["apply", "--beta", "1", "--f", "[0,1]", "--N", "8"]);
    let v = json(&out);
    let c = reals(&v["result"]["coeffs"]);
    assert_eq!(c.len(), 9);
    assert!((c[3] - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(v["result"]["truncated"], true);
}

#[test]
fn default_order_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bcl"))
        .args(["matrix", "--beta", "1"])
        .env("BCL_DEFAULT_N", "5")
        .output()
        .unwrap();
    assert_eq!(json(&out)["result"]["size"], 5);
    let out = bcl(&["spectrum", "--beta", "0"]);
    assert_eq!(json(&out)["result"]["eigenvalues"].as_array().unwrap().len(), 256);
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["seminorm", "--alpha", "1", "--f", "[0,0.5,[0,1],-0.25]", "--grid-radial", "32"];
    let a = bcl(&args);
    let b = bcl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["essnorm", "--beta", "0", "--alpha", "1", "--grid-radial", "16", "--grid-angular", "32"];
    assert_eq!(bcl(&args).stdout, bcl(&args).stdout);
}

#[test]
fn usage_errors_exit_one_with_a_single_line() {
    for args in [
        vec!["frobnicate"],
        vec!["classify", "--alpha", "2"],
        vec!["classify", "--alpha", "-1", "--beta", "0"],
        vec!["apply", "--beta", "1"],
        vec!["apply", "--beta", "1", "--f", "[1,2]"],
        vec!["apply", "--beta", "1", "--f", "not json"],
        vec!["bound", "--alpha", "0.5", "--beta", "0.7"],
        vec!["counterexample", "--alpha", "1", "--beta", "0.5", "--witness", "identity"],
        vec!["seminorm", "--alpha", "1", "--f", "[0,1]", "--rmax", "1.5"],
        vec!["essnorm", "--beta", "0", "--alpha", "1", "--dilations", "[0.9,0.5]"],
    ] {
        let out = bcl(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(stderr_line(&out).starts_with("bcl: error:"), "{args:?}");
    }
}

#[test]
fn malformed_symbol_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("syntax.json", "{"),
        ("zero_a.json", r#"{"terms":[{"a":[0,0],"b_angle":0}],"beta":1}"#),
        ("dup.json", r#"{"terms":[{"a":[1,0],"b_angle":0},{"a":[1,0],"b_angle":0}],"beta":1}"#),
        ("extra.json", r#"{"terms":[],"beta":1,"gamma":2}"#),
    ] {
        let path = write(dir.path(), name, body);
        let out = bcl(&["matrix", "--symbol", &path, "--N", "3"]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        stderr_line(&out);
    }
    let out = bcl(&["matrix", "--symbol", "/nonexistent/s.json"]);
    assert_eq!(out.status.code(), Some(1));
    let out = bcl(&["matrix", "--symbol", "/nonexistent/s.json", "--beta", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn failing_verdicts_exit_two() {
    // exponent 0.02 sits below the divergence threshold
    let out = bcl(&["counterexample", "--alpha", "0.5", "--beta", "0.52", "--witness", "identity"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["verdict"], "bounded");

    let out = bcl(&[
        "compactness", "--beta", "1", "--alpha", "0.5", "--m-max", "8", "--grid-radial", "32", "--grid-angular", "64",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["probe"]["verdict"], "inconsistent");

    let out = bcl(&["counterexample", "--alpha", "0.5", "--beta", "1", "--witness", "identity"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn series_file_overrides_inline() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "g.json", r#"{"coeffs":[[0,0],[0,0],[1,0]]}"#);
    let out = bcl(&["preimage", "--f", "[0,1]", "--f-file", &file]);
    assert_eq!(out.status.code(), Some(0));
    // f = z(1 − z) g′ with g = z²
    assert_eq!(reals(&json(&out)["result"]["coeffs"]), vec![0.0, 0.0, 2.0, -2.0]);
    let bare = write(dir.path(), "bare.json", "[0, 1]");
    let out = bcl(&["preimage", "--f-file", &bare]);
    assert_eq!(reals(&json(&out)["result"]["coeffs"]), vec![0.0, 1.0, -1.0]);
}

#[test]
fn out_flag_and_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    let out = bcl(&["matrix", "--beta", "0", "--N", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1+0i,0+0i\n0+0i,0.5+0i\n");

    let out = bcl(&["counterexample", "--alpha", "0.5", "--beta", "1", "--witness", "identity", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t,value\n"));
    assert_eq!(text.lines().count(), 41);

    let out = bcl(&["bound", "--alpha", "0.5", "--beta", "0", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("alpha,beta,case,value,argmax_t,at_boundary\n0.5,0,small_alpha,2,"));
}

#[test]
fn every_command_runs() {
    let small = ["--grid-radial", "16", "--grid-angular", "32"];
    let runs: Vec<Vec<&str>> = vec![
        [&["seminorm", "--alpha", "2", "--f", "[0,1,1]", "--check-growth"][..], &small].concat(),
        vec!["apply", "--beta", "0.5", "--f", "[0,1]", "--dilation", "0.5", "--N", "16"],
        vec!["matrix", "--beta", "1", "--N", "3"],
        vec!["spectrum", "--beta", "1", "--N", "3", "--alpha", "2"],
        vec!["eigenfunction", "--beta", "1", "--index", "2", "--N", "6"],
        vec!["bound", "--alpha", "1", "--beta", "0.5"],
        vec!["counterexample", "--alpha", "1", "--beta", "1.5", "--witness", "log"],
        vec!["counterexample", "--alpha", "1", "--beta", "2", "--witness", "pole", "--t-list", "[0.9,0.99,0.999]"],
        [&["compactness", "--beta", "0", "--alpha", "1", "--m-max", "16"][..], &small].concat(),
        [&["compactness", "--beta", "0", "--alpha", "1", "--family", "dilation", "--f", "[0,1]", "--m-max", "4"][..], &small]
            .concat(),
        vec!["preimage", "--f", "[0,1]"],
    ];
    for args in runs {
        let out = bcl(&args);
        assert!(matches!(out.status.code(), Some(0) | Some(2)), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["command"], args[0]);
        assert!(v["config"].is_object());
    }
    let v = json(&bcl(&["eigenfunction", "--beta", "1", "--index", "2", "--N", "4"]));
    assert_eq!(reals(&v["result"]["psi"]["coeffs"]), vec![1.0, 2.0, 3.0, 4.0, 5.0]);
    let v = json(&bcl(&[
        "compactness", "--beta", "0", "--alpha", "1", "--family", "dilation", "--f", "[0,1]", "--m-max", "4",
        "--grid-radial", "16", "--grid-angular", "32",
    ]));
    assert_eq!(v["result"]["family"]["degenerate"], true);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(bcl(&["--help"]).status.code(), Some(0));
    assert_eq!(bcl(&["--version"]).status.code(), Some(0));
    assert_eq!(bcl(&["essnorm", "--help"]).status.code(), Some(0));
}
