use std::path::Path;
use std::process::{Command, Output};

fn daqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_daqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = daqc(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compile_then_stats_reports_swaps() {
    let dir = tempfile::tempdir().unwrap();
    let linear = dir.path().join("zz_linear.json");
    let ladder = dir.path().join("zz_ladder.json");
    ok(&[
        "compile",
        "--model",
        "fh",
        "--n",
        "3",
        "--arch",
        "linear",
        "--factor",
        "zz",
        "--t",
        "1.0",
        "--out",
        path(&linear),
    ]);
    ok(&[
        "compile",
        "--n",
        "3",
        "--arch",
        "ladder",
        "--factor",
        "zz",
        "--t",
        "1.0",
        "--out",
        path(&ladder),
    ]);

    let stats: serde_json::Value =
        serde_json::from_str(&ok(&["stats", "--schedule", path(&linear)])).unwrap();
    assert_eq!(stats["stats"]["swaps"], 3);
    assert_eq!(stats["meta"]["target"], "zz");
    let stats: serde_json::Value =
        serde_json::from_str(&ok(&["stats", "--schedule", path(&ladder)])).unwrap();
    assert_eq!(stats["stats"]["swaps"], 0);
}

#[test]
fn compile_to_stdout_is_schedule_json() {
    let text = ok(&["compile", "--n", "2", "--factor", "yy", "--t", "0.5"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["arch"]["kind"], "linear");
    assert_eq!(v["blocks"][0]["type"], "rotations");
    assert_eq!(v["meta"]["t"], 0.5);
}

#[test]
fn run_reports_fidelity_and_dumps_state() {
    let dir = tempfile::tempdir().unwrap();
    let sched = dir.path().join("full.json");
    let ham = dir.path().join("h.json");
    let dump = dir.path().join("psi.bin");
    ok(&[
        "compile",
        "--n",
        "2",
        "--t",
        "0.6",
        "--l",
        "32",
        "--out",
        path(&sched),
        "--hamiltonian-out",
        path(&ham),
    ]);
    let report: serde_json::Value = serde_json::from_str(&ok(&[
        "run",
        "--schedule",
        path(&sched),
        "--state-seed",
        "4",
        "--hamiltonian",
        path(&ham),
        "--dump-state",
        path(&dump),
    ]))
    .unwrap();
    let f = report["fidelity"].as_f64().unwrap();
    assert!(f > 0.999 && f <= 1.0 + 1e-10, "{f}");
    assert!((report["norm"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(report["density"].as_array().unwrap().len(), 2);
    assert_eq!(std::fs::read(&dump).unwrap().len(), 16 * 16);
}

#[test]
fn sweep_writes_csv_with_stable_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results.csv");
    ok(&[
        "sweep",
        "--model",
        "fh",
        "--n",
        "2",
        "--arch",
        "linear",
        "--t-max",
        "1",
        "--t-points",
        "3",
        "--l",
        "2,4",
        "--seeds",
        "2",
        "--site",
        "1",
        "--out",
        path(&out),
    ]);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,l,seed,fidelity,density_exact,density_da,docc_exact,docc_da,analog_blocks,rotation_layers,swaps"
    );
    assert_eq!(lines.count(), 3 * 2 * 2);
}

#[test]
fn sweep_json_via_params() {
    let text = ok(&[
        "sweep",
        "--params",
        r#"{"model": "ladder", "n": 2, "lambda": 0.5, "epsilon": 0.25, "J": 0.3, "delta": 0.5}"#,
        "--arch",
        "ladder",
        "--t-min",
        "0.2",
        "--t-max",
        "0.2",
        "--t-points",
        "1",
        "--l",
        "4",
        "--seeds",
        "1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["swaps"], 0);
}

#[test]
fn failures_give_one_line_diagnostics() {
    for args in [
        vec!["stats", "--schedule", "/nonexistent/schedule.json"],
        vec![
            "compile", "--n", "3", "--factor", "xx", "--t", "1", "--l", "4",
        ],
        vec![
            "compile", "--model", "ladder", "--n", "3", "--J", "0.5", "--arch", "linear", "--t",
            "1",
        ],
        vec!["sweep", "--n", "3", "--site", "7", "--t-points", "1"],
    ] {
        let out = daqc(&args);
        assert!(!out.status.success(), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "), "{err}");
    }
}

#[test]
fn signed_times_flag_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let sched = dir.path().join("s.json");
    let params =
        r#"{"model": "ladder", "n": 3, "lambda": 0.5, "epsilon": 0.25, "J": 0.0, "delta": 0.1}"#;
    ok(&[
        "compile",
        "--params",
        params,
        "--arch",
        "ladder",
        "--t",
        "0.5",
        "--l",
        "2",
        "--allow-signed-times",
        "--out",
        path(&sched),
    ]);
    ok(&["stats", "--schedule", path(&sched)]);
}
