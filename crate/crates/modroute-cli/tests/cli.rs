//! End-to-end checks of the command-line interface.

use std::path::Path;
use std::process::{Command, Output};

fn modroute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modroute"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn gen_then_solve_theory_instance() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("theory.json");
    let out = modroute(&[
        "gen",
        "--kind",
        "theory",
        "--alpha",
        "2",
        "--lambda",
        "5",
        "--beta1",
        "1",
        "--beta2",
        "1",
        "--cluster-size",
        "2",
        "--out",
        inst.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let out = modroute(&["solve", "--instance", inst.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((summary["total_cost"].as_f64().unwrap() - 14.0).abs() < 1e-9);
    let events = summary["events"].as_array().unwrap();
    assert_eq!(events.len(), 1);
    assert_eq!(events[0]["kind"], "split");
    assert_eq!(events[0]["node"], 1);
}

#[test]
fn oracle_matches_route_on_theory_instance() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("theory.json");
    modroute(&["gen", "--kind", "theory", "--out", inst.to_str().unwrap()]);

    let modular = modroute(&["oracle", "--instance", inst.to_str().unwrap()]);
    assert!(modular.status.success());
    assert_eq!(stdout(&modular).trim(), "14.0000");

    let plain = modroute(&[
        "oracle",
        "--instance",
        inst.to_str().unwrap(),
        "--non-modular",
    ]);
    assert!(plain.status.success());
    assert_eq!(stdout(&plain).trim(), "16.0000");
}

#[test]
fn solve_csv_format_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("i.json");
    let trace = dir.path().join("trace.json");
    modroute(&[
        "gen",
        "--kind",
        "clustered",
        "--seed",
        "3",
        "--out",
        inst.to_str().unwrap(),
    ]);
    let out = modroute(&[
        "solve",
        "--instance",
        inst.to_str().unwrap(),
        "--format",
        "csv",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("total_cost,events"));
    let row = lines.next().unwrap();
    assert!(row.contains("split@") || row.contains("join@"), "{row}");

    let trace: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    let steps = trace["steps"].as_array().unwrap();
    assert!(!steps.is_empty());
    assert_eq!(steps[0]["t"], 0);
    assert!(trace["total_cost"].as_f64().unwrap() > 0.0);
}

#[test]
fn bench_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = modroute(&[
            "bench",
            "--trials",
            "5",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let left = std::fs::read(&a).unwrap();
    let right = std::fs::read(&b).unwrap();
    assert!(!left.is_empty());
    assert_eq!(left, right, "benchmark runs must be bit-identical");
    let text = String::from_utf8(left).unwrap();
    assert!(text.starts_with("seed,modular_cost,baseline_cost,oracle_cost,win\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn rejects_non_positive_weight() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("bad.json");
    std::fs::write(
        &inst,
        r#"{"nodes":2,"edges":[[0,1,0.0]],"modules":[0,1],"targets":[1]}"#,
    )
    .unwrap();
    let out = modroute(&["solve", "--instance", inst.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("strictly positive"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn rejects_malformed_json() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("broken.json");
    std::fs::write(&inst, "{ not json").unwrap();
    let out = modroute(&["solve", "--instance", inst.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("invalid instance"));
}

#[test]
fn rejects_missing_file() {
    let missing = Path::new("/nonexistent/instance.json");
    let out = modroute(&["solve", "--instance", missing.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("cannot read"));
}
