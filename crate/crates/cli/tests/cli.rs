use std::path::Path;
use std::process::{Command, Output};

use sasaki_core::homogeneous::sp_data;
use sasaki_core::positivity::AdaptedFourForm;
use sasaki_core::structure::{Params, PointModel};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sasaki-lab"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, value: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn suite<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == name)
        .unwrap_or_else(|| panic!("suite {name} missing"))
}

const SPHERE: [&str; 8] = ["--model", "point", "--n", "1", "--alpha", "1", "--delta", "1"];

#[test]
fn verify_three_sasaki_sphere() {
    let mut args = vec!["verify"];
    args.extend(SPHERE);
    args.extend(["--checks", "all"]);
    let out = run(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    assert_eq!(report["schema"], "1");
    assert_eq!(report["passed"], true);
    let names: Vec<&str> = report["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["structure", "torsion", "curvature", "spectra", "einstein", "positivity"]);
    let class = &suite(&report, "einstein")["data"]["classification"];
    assert_eq!(class["kind"], "delta_eq_alpha");
    assert_eq!(class["lambda"].as_f64(), Some(1.0));
}

#[test]
fn reports_are_byte_identical() {
    let mut args = vec!["verify"];
    args.extend(SPHERE);
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("\"alpha\": 1.000000000000e0"));
}

#[test]
fn certify_strongly_positive() {
    let out = run(&[
        "certify", "--model", "point", "--n", "1", "--alpha", "1", "--delta", "3", "--modifier", "sphere_like",
        "--epsilon", "auto",
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["certificate"]["verdict"], "strongly_positive");
    assert!(report["certificate"]["lambda_min"].as_f64().unwrap() > 0.0);
}

#[test]
fn certify_strongly_nonnegative() {
    let out = run(&[
        "certify", "--n", "1", "--alpha", "1", "--delta", "2.5", "--modifier", "sigma_only", "--epsilon", "0",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["certificate"]["verdict"], "strongly_nonnegative");
}

#[test]
fn certification_failure_exits_one() {
    let mut args = vec!["certify"];
    args.extend(SPHERE);
    args.extend(["--modifier", "sphere_like"]);
    let out = run(&args);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["certificate"]["verdict"], "fail");
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        vec!["verify", "--model", "point", "--n", "0", "--alpha", "1", "--delta", "1"],
        vec!["verify", "--n", "1", "--alpha", "0", "--delta", "1"],
        vec!["verify", "--n", "1", "--alpha", "1"],
        vec!["verify", "--n", "1", "--alpha", "1", "--delta", "1", "--checks", "homogeneous"],
        vec!["certify", "--n", "1", "--alpha", "1", "--delta", "3", "--epsilon", "-1"],
        vec!["certify", "--n", "1", "--alpha", "1", "--delta", "3", "--modifier", "custom"],
        vec!["verify", "--model", "sphere", "--n", "1", "--alpha", "1", "--delta", "1"],
        vec!["verify", "--model", "sp_homogeneous", "--n", "1", "--alpha", "1", "--delta", "-1"],
        vec!["verify", "--model", "custom_lie", "--alpha", "1", "--delta", "1"],
        vec!["sweep", "--n", "1"],
        vec!["verify", "--config", "/nonexistent/config.json"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn sweep_verdicts() {
    let out = run(&["sweep", "--n", "1", "--alphas", "1", "--ratios", "1,2,2.5,3,5"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let points = report["points"].as_array().unwrap();
    assert_eq!(points.len(), 5);
    let all: Vec<bool> = points.iter().map(|p| p["conditions"]["all"].as_bool().unwrap()).collect();
    assert_eq!(all, [false, false, true, true, true]);
    for p in points {
        assert_eq!(p["block_sign_follows_alpha_beta"], true);
        let ab = p["alpha_beta"].as_f64().unwrap();
        assert_eq!(p["canonical_nonnegative"].as_bool().unwrap(), ab >= 0.0);
    }
    assert_eq!(points[0]["einstein"]["kind"], "delta_eq_alpha");
    assert_eq!(points[1]["einstein"]["kind"], "not_einstein");
    let table = String::from_utf8(out.stderr).unwrap();
    assert_eq!(table.lines().count(), 6);
    assert!(table.lines().next().unwrap().contains("einstein"));
}

#[test]
fn single_point_sweep_matches_verify() {
    let sweep = json(&run(&["sweep", "--n", "2", "--alpha", "0.5", "--delta", "1.7"]));
    let verify = json(&run(&["verify", "--n", "2", "--alpha", "0.5", "--delta", "1.7", "--checks", "structure"]));
    assert_eq!(sweep["points"][0], verify["summary"]);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["sweep", "--n", "1", "--alphas", "1,-0.5", "--deltas", "0.5,1,3"];
    let one = run_env(&args, &[("SASAKI_LAB_THREADS", "1")]);
    let four = run_env(&args, &[("SASAKI_LAB_THREADS", "4")]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    let bad = run_env(&args, &[("SASAKI_LAB_THREADS", "zero")]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn homogeneous_models() {
    let out = run(&["verify", "--model", "sp_homogeneous", "--n", "1", "--alpha", "1", "--delta", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    assert_eq!(report["suites"][0]["name"], "homogeneous");
    assert_eq!(report["suites"][0]["data"]["dim_g"], 10);

    let dir = tempfile::tempdir().unwrap();
    let doc = serde_json::to_value(sp_data(1).to_document()).unwrap();
    let path = write(dir.path(), "sp2.json", &doc);
    let out = run(&["verify", "--model", "custom_lie", "--lie-data", &path, "--alpha", "1", "--delta", "1"]);
    assert_eq!(code(&out), 0);

    let mut broken = doc.clone();
    broken["g1"].as_array_mut().unwrap().pop();
    let path = write(dir.path(), "broken.json", &broken);
    let out = run(&["verify", "--model", "custom_lie", "--lie-data", &path, "--alpha", "1", "--delta", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn exported_operators_round_trip() {
    let mut args = vec!["export-operator"];
    args.extend(SPHERE);
    args.extend(["--operator", "riemannian"]);
    let out = run(&args);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["basis"][0], "e1^e2");
    let m = report["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 21);
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.as_array().unwrap().iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((v.as_f64().unwrap() - want).abs() < 1e-12);
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let r1 = json(&run(&["export-operator", "--n", "1", "--alpha", "1", "--delta", "2", "--operator", "r1"]));
    let path = write(dir.path(), "r1.json", &r1);
    let out = run(&["verify", "--n", "1", "--alpha", "1", "--delta", "2", "--r1", &path]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["model"]["r1"], true);

    let identity: Vec<Vec<f64>> = (0..21).map(|i| (0..21).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let path = write(dir.path(), "bad.json", &serde_json::json!({"dim": 7, "matrix": identity}));
    let out = run(&["verify", "--n", "1", "--alpha", "1", "--delta", "2", "--r1", &path]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("R1"));
}

#[test]
fn config_file_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("report.json");
    let cfg = serde_json::json!({
        "model": "point", "n": 1, "alpha": 1.0, "delta": 3.0,
        "modifier": "sphere_like", "epsilon": "auto",
        "output": output.to_str().unwrap(),
    });
    let path = write(dir.path(), "run.json", &cfg);
    let out = run(&["certify", "--config", &path]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(report["certificate"]["verdict"], "strongly_positive");

    // flags win over the file
    let out = run(&["certify", "--config", &path, "--delta", "1", "--output", "/dev/stdout"]);
    assert_eq!(code(&out), 1);

    let path = write(dir.path(), "typo.json", &serde_json::json!({"n": 1, "alpah": 1.0}));
    assert_eq!(code(&run(&["verify", "--config", &path])), 2);
}

#[test]
fn custom_modifier_form() {
    let model = PointModel::build(Params::new(1, 1.0, 3.0).unwrap());
    let adapted = AdaptedFourForm::quaternionic(&model, 0.75);
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "omega.json",
        &serde_json::json!({"dim": 7, "coefficients": adapted.omega.coeffs()}),
    );
    let out = run(&[
        "certify", "--n", "1", "--alpha", "1", "--delta", "3", "--modifier", "custom", "--modifier-form", &path,
    ]);
    assert_eq!(code(&out), 0);
    let cert = &json(&out)["certificate"];
    assert_eq!(cert["verdict"], "strongly_positive");
    assert!((cert["q_eigenvalue"].as_f64().unwrap() - adapted.q_eigenvalue).abs() < 1e-9);

    let mut coeffs = vec![0.0; 35];
    coeffs[0] = 1.0;
    let path = write(dir.path(), "vertical.json", &serde_json::json!({"dim": 7, "coefficients": coeffs}));
    let out = run(&[
        "certify", "--n", "1", "--alpha", "1", "--delta", "3", "--modifier", "custom", "--modifier-form", &path,
    ]);
    assert_eq!(code(&out), 2);
}
