use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn inbody(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inbody"))
        .args(args)
        .env("INBODY_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json_result(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tool"], "inbody");
    assert!(v["version"].is_string());
    assert!(v["config"].is_object());
    v["result"].clone()
}

fn stderr_error(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn metrics_on_unit_cube() {
    let path = data("unit_cube.json");
    let r = json_result(&inbody(&["metrics", "--input", path.to_str().unwrap()]));
    assert!((r["volume"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((r["perimeter"].as_f64().unwrap() - 6.0).abs() < 1e-12);
    assert!((r["inradius"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(r["circumscribed"], true);
}

#[test]
fn profile_on_unit_square_matches_closed_form() {
    let path = data("unit_square.json");
    let out = inbody(&["profile", "--input", path.to_str().unwrap(), "--grid", "11"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(lines.next(), Some("eps,l_vol,g,g_over_n,chord,deriv"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    for row in rows {
        let eps = row[0];
        let expected = 1.0 - (1.0 - 2.0 * eps).powi(2);
        assert!((row[1] - expected).abs() < 1e-10, "{eps}: {}", row[1]);
    }
    assert!(text.starts_with("# inbody "));
}

#[test]
fn attractor_on_cantor_file() {
    let path = data("cantor_ifs.json");
    let r = json_result(&inbody(&[
        "attractor",
        "--input",
        path.to_str().unwrap(),
        "--max-depth",
        "12",
        "--tol",
        "0.01",
    ]));
    let s = r["s_star"].as_f64().unwrap();
    assert!((0.62..=0.64).contains(&s), "{s}");
    let bc = r["box_counting"]["dimension"].as_f64().unwrap();
    assert!((bc - s).abs() <= 0.05);
}

#[test]
fn norms_accept_each_norm_choice() {
    let path = data("parabolic_ifs.json");
    for norm in ["spectral", "frobenius", "maxentry"] {
        let r = json_result(&inbody(&[
            "norms",
            "--input",
            path.to_str().unwrap(),
            "--norm",
            norm,
        ]));
        assert_eq!(r["norm"], norm);
        let s = r["s_star"].as_f64().unwrap();
        assert!((0.0..=1.0).contains(&s));
    }
}

#[test]
fn oracle_report_is_byte_identical_across_runs() {
    let path = data("triangle.json");
    let args = [
        "oracle",
        "--input",
        path.to_str().unwrap(),
        "--samples",
        "100000",
        "--seed",
        "3",
    ];
    let a = inbody(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_inbody"))
        .args(args)
        .env("INBODY_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r = json_result(&a);
    assert_eq!(r["volume"]["within_4_sigma"], true);
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let path = data("pancake_2_4.json");
    let out = inbody(&[
        "inner",
        "--input",
        path.to_str().unwrap(),
        "--eps",
        "0.25",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert!((v["result"]["l"].as_f64().unwrap() - 2.25).abs() < 1e-12);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn exit_codes_and_error_stream() {
    let missing = inbody(&["metrics", "--input", "/nonexistent/body.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(stderr_error(&missing)["error"], "Io");

    let dir = tempfile::tempdir().unwrap();
    let garbled = dir.path().join("bad.json");
    std::fs::write(&garbled, "{ not json").unwrap();
    let out = inbody(&["metrics", "--input", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_error(&out)["error"], "Parse");

    let square = data("unit_square.json");
    let out = inbody(&["inner", "--input", square.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_error(&out)["error"], "Usage");

    let empty = dir.path().join("empty.json");
    std::fs::write(
        &empty,
        r#"{"dim": 1, "halfspaces": [{"a": [1], "b": 0}, {"a": [-1], "b": -1}]}"#,
    )
    .unwrap();
    let out = inbody(&["metrics", "--input", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_error(&out)["detail"].is_string());

    let out = inbody(&["inner", "--input", square.to_str().unwrap(), "--eps", "0.9"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["error"], "EpsOutOfRange");
}
