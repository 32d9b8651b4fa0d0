//! End-to-end runs of the `centroframe` binary.

use std::path::Path;
use std::process::{Command, Output};

use centroframe::commands::AnalyzeReport;
use centroframe::report::{read_records_csv, to_json, Envelope};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_centroframe")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("UTF-8")
}

#[test]
fn analyze_json_is_deterministic_and_complete() {
    let args = ["analyze", "--surface", "h2", "--grid", "-1:1:5", "-1:1:5"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "3"]);
    assert_eq!(a, stdout(&parallel));
    assert!(!a.contains('\r'));

    let env: Envelope<AnalyzeReport> = serde_json::from_str(&a).unwrap();
    assert_eq!(env.schema, "centroframe/1");
    assert_eq!(env.command, "analyze");
    let r = env.body;
    assert_eq!(r.records.len(), 25);
    for p in &r.records {
        assert_eq!(p.surface_type.as_deref(), Some("SpaceLike"));
        assert_eq!(p.epsilon, Some(1));
        assert!((p.k_gauss.unwrap() + 1.0 / 3.0).abs() < 1e-6);
    }
    // the parsed report serializes back to the same bytes
    assert_eq!(to_json(&Envelope::new("analyze", &r)), a);
}

#[test]
fn csv_matches_json_records() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let common = ["analyze", "--surface", "sphere", "--grid", "-1:1:3", "-pi/2:pi/2:5", "--out", d];
    stdout(&[&common[..], &["--format", "json"]].concat());
    stdout(&[&common[..], &["--format", "csv"]].concat());
    let json = std::fs::read_to_string(dir.path().join("analyze_sphere.json")).unwrap();
    let env: Envelope<AnalyzeReport> = serde_json::from_str(&json).unwrap();
    let csv = read_records_csv(std::fs::File::open(dir.path().join("analyze_sphere.csv")).unwrap()).unwrap();
    assert_eq!(csv, env.body.records);
    // v = ±π/2 rows fail, the rest succeed
    assert_eq!(env.body.failures, 6);
    assert!(csv.iter().filter(|r| r.error.is_some()).all(|r| (r.v.abs() - std::f64::consts::FRAC_PI_2).abs() < 1e-15));
}

fn files_in(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

#[test]
fn example_writes_projection_sets() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = stdout(&["example", "h2", "--grid", "-1:1:4", "--out", d]);
    assert!(out.contains("\"max_quadric_residual\""));
    assert_eq!(files_in(dir.path()), ["h2_surface.csv", "h2_x1_x2_x0.csv", "h2_x1_x2_x3.csv", "h2_x1_x2_x4.csv"]);
    stdout(&["example", "s21", "--grid", "-1:1:4", "--out", d]);
    let s21: Vec<_> = files_in(dir.path()).into_iter().filter(|f| f.starts_with("s21_x")).collect();
    assert_eq!(s21.len(), 5);
    let text = std::fs::read_to_string(dir.path().join("s21_x1_x3_x0.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("u,v,x1,x3,x0"));
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn verify_filters_and_reports_failures() {
    let ok = run(&["verify", "--check", "brackets"]);
    assert!(ok.status.success());
    let json = String::from_utf8(ok.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], "centroframe/1");
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["brackets.h2", "brackets.sphere", "brackets.s21"]);

    let tight = run(&["verify", "--check", "pipeline", "--tol", "1e-15"]);
    assert_eq!(tight.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&tight.stdout).unwrap();
    assert!(v["failed"].as_u64().unwrap() > 0);
    let failing = v["checks"].as_array().unwrap().iter().find(|c| c["passed"] == false).unwrap();
    assert!(failing["measured"].as_f64().unwrap() > 1e-15);
}

#[test]
fn search_reports_known_solutions() {
    for (case, clusters) in [("timelike", 1), ("spacelike+", 1), ("spacelike-", 1), ("spacelike", 2)] {
        let out = run(&["search", case, "--restarts", "40", "--seed", "7"]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let cl = v["clusters"].as_array().unwrap();
        assert_eq!(cl.len(), clusters, "{case}");
        assert!(cl.iter().all(|c| c["matches_known"] == true));
        assert!(String::from_utf8_lossy(&out.stderr).contains("matches the homogeneous example"));
    }
}

#[test]
fn config_errors_exit_with_two() {
    for args in [
        vec!["analyze", "--surface", "nosuch"],
        vec!["analyze", "--surface", "u; v; 1"],
        vec!["analyze", "--surface", "h2", "--grid", "0:1:0"],
        vec!["analyze", "--surface", "h2", "--grid", "0:inf:3"],
        vec!["analyze", "--surface", "h2", "--degree", "3"],
        vec!["analyze", "--surface", "h2", "--grid"],
        vec!["analyze", "--surface", "a*u; v; 1; 2; 3"],
        vec!["example", "torus"],
        vec!["search", "lightlike"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn params_and_surface_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scaled.surf");
    std::fs::write(&path, "# scaled copy of the hyperbolic model\n".to_string() + &centroframe::dsl::builtin_source("h2").unwrap().replace("sqrt(3)", "k*sqrt(3)")).unwrap();
    let out = stdout(&["analyze", "--surface", path.to_str().unwrap(), "--param", "k=1", "--grid", "0:0.5:2"]);
    let env: Envelope<AnalyzeReport> = serde_json::from_str(&out).unwrap();
    assert_eq!(env.body.surface.name, "scaled");
    assert!(env.body.records.iter().all(|r| (r.k_gauss.unwrap() + 1.0 / 3.0).abs() < 1e-9));
}
