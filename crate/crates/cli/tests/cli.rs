use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fermigas"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn figure_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let st = bin()
            .args(["figure", "3", "--grid", "21", "--eps", "0.01", "--out"])
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(st.success());
    }
    let ca = std::fs::read(a.path().join("figure3.csv")).unwrap();
    let cb = std::fs::read(b.path().join("figure3.csv")).unwrap();
    assert_eq!(ca, cb);
    let header = String::from_utf8(ca).unwrap().lines().next().unwrap().to_string();
    assert_eq!(header, "x,N_1_2,N_1_23,N_1_234,degenerate");
    assert!(a.path().join("figure3.json").exists());
}

#[test]
fn sweep_writes_named_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "pair.json",
        r#"{"kind": "custom", "positions": [[0,0,0],[1,0,0]], "grid": {"start": 0, "stop": 6, "points": 7},
            "seed": 1, "outputs": ["negativity", "entropy", "weights", "residual"]}"#,
    );
    let out = dir.path().join("out");
    let st = bin().args(["sweep", "--spec"]).arg(&spec).arg("--out").arg(&out).status().unwrap();
    assert!(st.success());
    let csv = std::fs::read_to_string(out.join("pair.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "x,N_1_2,S2_bits,S2_nats,w0,w_12,residual,degenerate"
    );
    assert_eq!(csv.lines().count(), 8);
}

#[test]
fn invalid_spec_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "bad.json", r#"{"kind": "simplex", "n": 3, "grid": {"start": 0, "stop": 1, "points": 1}}"#);
    let out = bin().args(["sweep", "--spec"]).arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid.points"));

    let spec = write(dir.path(), "broken.json", "{\n\"kind\": \"line\",\n oops\n}");
    let out = bin().args(["analyze", "--spec"]).arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = bin().args(["figure", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degenerate_only_sweep_exits_with_1() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "coincident.json",
        r#"{"kind": "custom", "positions": [[0,0,0],[1,0,0],[0,1,0]], "grid": {"start": 0, "stop": 1e-6, "points": 2}}"#,
    );
    let st = bin().args(["sweep", "--spec"]).arg(&spec).arg("--out").arg(dir.path()).status().unwrap();
    assert_eq!(st.code(), Some(1));
}

#[test]
fn analyze_prints_report() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "tri.json",
        r#"{"kind": "custom", "positions": [[0,0,0],[0.5,0,0],[0,0.7,0]]}"#,
    );
    let out = bin().args(["analyze", "--spec"]).arg(&spec).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let report = &v["report"];
    assert_eq!(report["n"], 3);
    assert_eq!(report["bipartitions"].as_array().unwrap().len(), 3);
    assert!(report["witness_ghz"].as_f64().unwrap() >= 0.0);
    assert!(v["pair_weights"]["residual"].as_f64().unwrap() < 1e-10);
}
