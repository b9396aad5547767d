use std::io::Write;
use std::process::{Command, Output};

use homsphere::spectrum::{lambda1_closed, spectrum_up_to};
use homsphere::{normalize_triple, GroupKind, Settings};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homsphere"))
        .args(args)
        .env_remove("HOMSPHERE_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn pairs(v: &Value) -> Vec<(f64, u64)> {
    v["results"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["value"].as_f64().unwrap(),
                e["multiplicity"].as_u64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn round_su2_spectrum() {
    let v = json(&[
        "spectrum",
        "--a",
        "1",
        "--b",
        "1",
        "--c",
        "1",
        "--group",
        "su2",
        "--lambda-max",
        "15",
    ]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "spectrum");
    assert_eq!(pairs(&v), vec![(0.0, 1), (3.0, 4), (8.0, 9), (15.0, 16)]);
}

#[test]
fn berger_su2_first_eigenvalue() {
    let v = json(&[
        "spectrum",
        "--a",
        "3",
        "--b",
        "1",
        "--c",
        "1",
        "--group",
        "su2",
        "--lambda-max",
        "9",
    ]);
    assert_eq!(pairs(&v)[1], (8.0, 3));
    let w = json(&[
        "spectrum",
        "--a",
        "3",
        "--b",
        "1",
        "--c",
        "1",
        "--lambda-max",
        "9",
        "--berger-closed-form",
    ]);
    assert_eq!(v["results"], w["results"]);
}

#[test]
fn round_so3_spectrum() {
    let v = json(&[
        "spectrum",
        "--a",
        "1",
        "--b",
        "1",
        "--c",
        "1",
        "--group",
        "so3",
        "--lambda-max",
        "9",
    ]);
    assert_eq!(pairs(&v), vec![(0.0, 1), (8.0, 9)]);
}

#[test]
fn csv_output() {
    let out = run(&[
        "spectrum",
        "--a",
        "1",
        "--b",
        "1",
        "--c",
        "1",
        "--lambda-max",
        "8",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rows.headers().unwrap(),
        vec!["value", "multiplicity", "k_sources"]
    );
    let rows: Vec<(f64, u64, String)> = rows
        .records()
        .map(|r| {
            let r = r.unwrap();
            (
                r[0].parse().unwrap(),
                r[1].parse().unwrap(),
                r[2].to_string(),
            )
        })
        .collect();
    assert_eq!(
        rows,
        vec![
            (0.0, 1, "0".into()),
            (3.0, 4, "1".into()),
            (8.0, 9, "2".into())
        ]
    );
}

#[test]
fn lambda1_command() {
    let v = json(&[
        "lambda1", "--a", "2", "--b", "1", "--c", "1", "--group", "su2",
    ]);
    let r = &v["results"];
    assert_eq!(r["value"].as_f64(), Some(6.0));
    assert_eq!(r["multiplicity"].as_u64(), Some(4));
    assert_eq!(r["regime"], "SumDominates");
}

#[test]
fn estimate_berger_extrema() {
    let v = json(&["estimate", "--berger-extrema"]);
    let e = &v["results"]["berger_extrema"];
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((e["min"].as_f64().unwrap() - (1.0 + 3f64.sqrt() / 2.0) * pi2).abs() < 1e-9);
    assert!((e["max"].as_f64().unwrap() - 3.0 * pi2).abs() < 1e-9);
}

#[test]
fn product_command() {
    let v = json(&["product", "--su2", "1,1,1", "--su2", "1,1,1"]);
    let r = &v["results"];
    let pi2 = std::f64::consts::PI.powi(2);
    assert_eq!(r["lambda1"].as_f64(), Some(3.0));
    assert!((r["diam2"]["lo"].as_f64().unwrap() - 2.0 * pi2).abs() < 1e-12);
    assert_eq!(run(&["product"]).status.code(), Some(2));
}

#[test]
fn geometry_and_rigidity_commands() {
    let v = json(&["geometry", "--a", "2", "--b", "1", "--c", "1"]);
    assert_eq!(v["results"]["scalar_curvature"].as_f64(), Some(7.5));
    assert_eq!(v["results"]["yamabe_gap"].as_f64(), Some(2.25));

    let v = json(&["rigidity", "--invariants", "1,6,3,4"]);
    let r = &v["results"]["recovered"];
    assert_eq!(
        [r["a"].as_f64(), r["b"].as_f64(), r["c"].as_f64()],
        [Some(1.0); 3]
    );

    let v = json(&[
        "rigidity",
        "--a",
        "2",
        "--b",
        "1",
        "--c",
        "1",
        "--compare",
        "2.0001,1,1",
    ]);
    assert_eq!(
        v["results"]["verdict"]["DistinctSpectra"]["index"].as_u64(),
        Some(1)
    );
    let v = json(&[
        "rigidity",
        "--a",
        "2",
        "--b",
        "1",
        "--c",
        "1",
        "--compare",
        "1,2,1",
    ]);
    assert_eq!(v["results"]["verdict"], "Isometric");
}

#[test]
fn exit_codes() {
    let bad = run(&[
        "spectrum",
        "--a",
        "0",
        "--b",
        "1",
        "--c",
        "1",
        "--lambda-max",
        "3",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    let cap = run(&[
        "spectrum",
        "--a",
        "1",
        "--b",
        "1e-3",
        "--c",
        "1e-3",
        "--lambda-max",
        "1e9",
    ]);
    assert_eq!(cap.status.code(), Some(3));
    let unknown = run(&[
        "spectrum",
        "--a",
        "1",
        "--b",
        "1",
        "--c",
        "1",
        "--group",
        "so4",
        "--lambda-max",
        "3",
    ]);
    assert_eq!(unknown.status.code(), Some(2));
    let berger = run(&[
        "spectrum",
        "--a",
        "2",
        "--b",
        "1",
        "--c",
        "0.5",
        "--lambda-max",
        "3",
        "--berger-closed-form",
    ]);
    assert_eq!(berger.status.code(), Some(2));
}

#[test]
fn config_file_and_flag_override() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "k_cap = 2").unwrap();
    let path = f.path().to_str().unwrap();
    let args = [
        "spectrum",
        "--a",
        "1",
        "--b",
        "1",
        "--c",
        "1",
        "--lambda-max",
        "15",
    ];
    let capped = Command::new(env!("CARGO_BIN_EXE_homsphere"))
        .args(args)
        .env("HOMSPHERE_CONFIG", path)
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let mut with_flag = vec!["--config", path, "--k-cap", "10"];
    with_flag.extend(args);
    assert!(run(&with_flag).status.success());
}

#[test]
fn output_is_deterministic() {
    let args = [
        "spectrum",
        "--a",
        "2.3",
        "--b",
        "1.1",
        "--c",
        "0.4",
        "--lambda-max",
        "60",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn numbers_round_trip() {
    let (a, b, c) = (2.3, 1.1, 0.4);
    let v = json(&[
        "spectrum",
        "--a",
        "2.3",
        "--b",
        "1.1",
        "--c",
        "0.4",
        "--lambda-max",
        "60",
    ]);
    let t = normalize_triple(a, b, c).unwrap();
    let table = spectrum_up_to(60.0, &t, GroupKind::Su2, &Settings::default()).unwrap();
    let got = pairs(&v);
    assert_eq!(got.len(), table.entries.len());
    for ((x, m), e) in got.iter().zip(&table.entries) {
        assert!((x - e.value).abs() <= 1e-12 * e.value.abs().max(1.0));
        assert_eq!(*m, e.multiplicity);
    }

    let v = json(&[
        "lambda1", "--a", "2.3", "--b", "1.1", "--c", "0.4", "--group", "so3",
    ]);
    let want = lambda1_closed(&t, GroupKind::So3).value;
    assert!((v["results"]["value"].as_f64().unwrap() - want).abs() <= 1e-12 * want);
}
