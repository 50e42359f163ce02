use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn fuzzrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzrel"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn degree_on_turbine_relation() {
    let v = json(&fuzzrel(&[
        "degree",
        &fixture("turbine.csv"),
        "--tnorm",
        "product",
        "--implication",
        "residual:product",
    ]));
    assert_eq!(v["schema"], 1);
    assert!((v["alpha"].as_f64().unwrap() - 0.8981).abs() <= 0.0005);
    assert_eq!(v["n"], 18);
}

#[test]
fn compare_reports_distortion() {
    let v = json(&fuzzrel(&["compare", &fixture("turbine.csv")]));
    assert!((v["distortion"].as_f64().unwrap() - 0.5786).abs() <= 0.01);
    assert!(v["timing"]["direct_seconds"].is_number());
    assert_eq!(v["lambdas"].as_array().unwrap().len(), 11);
}

#[test]
fn check_two_point_relation() {
    let out = fuzzrel(&[
        "check",
        &fixture("two_point.csv"),
        "--tnorm",
        "lukasiewicz",
        "--implication",
        "sn:lukasiewicz:standard",
        "--epsilon",
        "0.7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["holds"], false);
    assert_eq!(v["pointwise"]["holds"], false);
    assert_eq!(v["alpha"], 0.6);
}

#[test]
fn bad_matrices_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.csv");
    std::fs::write(&big, "1,0.5\n1.2,1\n").unwrap();
    let out = fuzzrel(&["degree", big.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("row 2, column 1"), "{}", stderr(&out));

    let wide = dir.path().join("wide.csv");
    std::fs::write(&wide, "1,0.5,0.2\n0.5,1,0.3\n").unwrap();
    let out = fuzzrel(&["degree", wide.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("non-square"));

    let out = fuzzrel(&[
        "degree",
        &fixture("turbine.csv"),
        "--implication",
        "residual:hamacher",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("valid options"));
    assert_eq!(fuzzrel(&["degree", "missing.csv"]).status.code(), Some(1));
    assert_eq!(
        fuzzrel(&["cluster", &fixture("turbine.csv"), "--mode", "blobs"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        fuzzrel(&[
            "cluster",
            &fixture("turbine.csv"),
            "--lambda",
            "0.5:1.5:0.5"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn operator_without_ordering_property_is_rejected() {
    let out = fuzzrel(&[
        "degree",
        &fixture("two_point.csv"),
        "--implication",
        "g:neglog-complement",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("ordering property"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn features_to_similarity() {
    let out = fuzzrel(&["simdata", "--features", &fixture("turbine_features.csv")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 18);
    assert!((rows[0][1] - 0.9934).abs() <= 5e-4);

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(
        fuzzrel(&["simdata", "--features", empty.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    let zero = dir.path().join("zero.csv");
    std::fs::write(&zero, "a,b,label\n1,2,x\n0,0,\n").unwrap();
    let out = fuzzrel(&["simdata", "--features", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("row 2"));
}

#[test]
fn cluster_with_diagnosis() {
    let v = json(&fuzzrel(&[
        "cluster",
        &fixture("turbine.csv"),
        "--features",
        &fixture("turbine_features.csv"),
        "--lambda",
        "0.94,1.0",
    ]));
    let sweep = v["sweep"].as_array().unwrap();
    assert_eq!(sweep[0]["clusters"].as_array().unwrap().len(), 3);
    assert_eq!(sweep[0]["diagnosis"]["16"], "Oil whirl");
    assert_eq!(sweep[0]["diagnosis"]["17"], "Unbalance");
    assert_eq!(sweep[0]["diagnosis"]["18"], "Misalignment");
    assert_eq!(sweep[1]["clusters"].as_array().unwrap().len(), 18);

    let out = fuzzrel(&[
        "cluster",
        &fixture("turbine.csv"),
        "--lambda",
        "0.94",
        "--format",
        "text",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.trim() == "1 2 3 4 5 16"), "{text}");
}

#[test]
fn closure_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("closure.csv");
    let out = fuzzrel(&[
        "closure",
        &fixture("turbine.csv"),
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let again = fuzzrel(&["degree", path.to_str().unwrap()]);
    let alpha = json(&again)["alpha"].as_f64().unwrap();
    // six-decimal rounding keeps the closure transitive up to rounding
    assert!(alpha > 0.9999, "{alpha}");
}

#[test]
fn aggregate_reports_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let agg = dir.path().join("agg.csv");
    let out = fuzzrel(&[
        "aggregate",
        &fixture("turbine.csv"),
        &fixture("turbine_closure.csv"),
        "--aggregator",
        "wqam:identity:0.5,0.5",
        "--epsilon",
        "1",
        "--grid-step",
        "0.1",
        "--matrix-output",
        agg.to_str().unwrap(),
    ]);
    let v = json(&out);
    assert_eq!(v["preservation"]["preserved"], false);
    assert!(
        v["preservation"]["counterexample"]["lhs"].as_f64().unwrap()
            > v["preservation"]["counterexample"]["rhs"].as_f64().unwrap()
    );
    assert!(agg.is_file());
    let v = json(&fuzzrel(&[
        "aggregate",
        &fixture("turbine.csv"),
        &fixture("turbine_closure.csv"),
        "--aggregator",
        "min",
        "--epsilon",
        "0.8",
        "--samples",
        "500",
        "--seed",
        "7",
    ]));
    assert_eq!(v["preservation"]["preserved"], true);
    assert_eq!(v["preservation"]["samples_tested"], 500);
}

fn without_timing(out: &Output) -> String {
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    match serde_json::from_str::<Value>(&text) {
        Ok(mut v) => {
            v.as_object_mut().unwrap().remove("timing");
            v.to_string()
        }
        Err(_) => text
            .lines()
            .filter(|l| !l.starts_with("timing:"))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

#[test]
fn reports_are_reproducible() {
    let m = fixture("turbine.csv");
    for args in [
        vec!["degree", m.as_str()],
        vec!["compare", m.as_str(), "--format", "text"],
        vec!["cluster", m.as_str(), "--mode", "cliques"],
        vec!["closure", m.as_str()],
    ] {
        assert_eq!(
            without_timing(&fuzzrel(&args)),
            without_timing(&fuzzrel(&args)),
            "{args:?}"
        );
    }
}

#[test]
fn thread_cap_from_environment() {
    let m = fixture("turbine.csv");
    let one = Command::new(env!("CARGO_BIN_EXE_fuzzrel"))
        .env("FUZZREL_THREADS", "1")
        .args(["degree", &m])
        .output()
        .unwrap();
    assert_eq!(
        without_timing(&one),
        without_timing(&fuzzrel(&["degree", &m]))
    );
    let bad = Command::new(env!("CARGO_BIN_EXE_fuzzrel"))
        .env("FUZZREL_THREADS", "zero")
        .args(["degree", &m])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn help_lists_grammar() {
    let out = fuzzrel(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("sn:<tconorm>:<negation>"));
}
