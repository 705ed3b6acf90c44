use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fanodef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanodef"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const CUBE: &str = r#"{"lattice_dim": 3, "vertices": [[1,1,1],[1,1,-1],[1,-1,1],[1,-1,-1],[-1,1,1],[-1,1,-1],[-1,-1,1],[-1,-1,-1]]}"#;

#[test]
fn analyze_bundled_polytope() {
    let o = fanodef(&["analyze", "paper-P", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["polar"]["normalized_volume"], "40/3");
    assert_eq!(r["k_polystable"]["polystable"], true);
    assert_eq!(r["t1"]["h0_dim"], 8);
    assert_eq!(r["t1"]["h1_dim"], 0);
    assert_eq!(r["hull"]["hull"]["ideal"].as_array().unwrap().len(), 4);
    assert_eq!(r["invariants"]["holds"], true);
    assert_eq!(r["period"][10], "517143312");
    assert!(r["stopped"].is_null());
    let text = stdout(&fanodef(&["analyze", "paper-P"]));
    assert!(text.contains("hull: C[[t1,t2,t3,t4,t5,t6,t7,t8]]/(t1^2, t1t2, t3^2, t3t4)"));
    assert!(text.contains("MATCH up to degree 8"));
}

#[test]
fn json_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let a = fanodef(&["analyze", "paper-P", "--format", "json"]);
    let b = fanodef(&[
        "analyze",
        "paper-P",
        "--format",
        "json",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(b.status.code(), Some(0));
    assert!(b.stdout.is_empty());
    assert_eq!(a.stdout, fs::read(out).unwrap());
}

/// The cube's facet cones are cones over 2×2 squares: Gorenstein, with a
/// five-element Hilbert basis, outside the supported T¹ rules.
#[test]
fn analyze_cube_reports_charts_then_exits_2() {
    let dir = TempDir::new().unwrap();
    let cube = write(&dir, "cube.json", CUBE);
    let o = fanodef(&["analyze", &cube, "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("F1"));
    let r = json(&o);
    assert_eq!(r["polytope"]["fano"]["reflexive"], true);
    let facets = r["atlas"]["facets"].as_array().unwrap();
    assert_eq!(facets.len(), 6);
    for f in facets {
        assert_eq!(f["report"]["gorenstein"], true);
        assert_eq!(f["report"]["hilbert_basis_size"], 5);
    }
    assert!(r["t1"].is_null());
}

#[test]
fn malformed_inputs_exit_1() {
    let dir = TempDir::new().unwrap();
    let garbage = write(&dir, "garbage.json", "{not json");
    assert_eq!(fanodef(&["analyze", &garbage]).status.code(), Some(1));
    let wrong = write(&dir, "wrong.json", r#"{"dim": 3}"#);
    assert_eq!(fanodef(&["analyze", &wrong]).status.code(), Some(1));
    assert_eq!(fanodef(&["period", &wrong]).status.code(), Some(1));
    assert_eq!(fanodef(&["analyze", "missing.json"]).status.code(), Some(1));
}

#[test]
fn period_commands() {
    let o = fanodef(&["period", "paper-f", "--order", "10"]);
    assert!(stdout(&o).trim_end().ends_with("517143312"));
    assert_eq!(
        stdout(&fanodef(&["period", "paper-f", "--order", "0"])).trim(),
        "1"
    );
    let dir = TempDir::new().unwrap();
    let xpx = write(
        &dir,
        "xpx.json",
        r#"{"dim": 1, "terms": [{"e": [1], "c": "1"}, {"e": [-1], "c": "1"}]}"#,
    );
    let o = fanodef(&["period", &xpx, "--order", "6", "--format", "json"]);
    assert_eq!(
        json(&o),
        serde_json::json!(["1", "0", "2", "0", "6", "0", "20"])
    );
    assert_eq!(
        fanodef(&["period", "paper-f", "--order", "13"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        fanodef(&["period", &xpx, "--order", "13", "--order-bound", "14"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn invariants_commands() {
    let o = fanodef(&["invariants", "paper-A", "--max-degree", "8"]);
    assert!(stdout(&o).contains("MATCH up to degree 8"));
    let o = fanodef(&[
        "invariants",
        "paper-A",
        "--action",
        "trivial",
        "--format",
        "json",
    ]);
    let c = json(&o);
    assert_eq!(c["first_mismatch"], 2);
    assert_eq!(c["invariant"][2], 6);
    assert_eq!(c["claimed"][2], 5);
    let o = fanodef(&["invariants", "paper-A", "--max-degree", "0"]);
    assert!(stdout(&o).contains("MATCH"));

    // an action that does not preserve the ideal
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"generators": [{"matrix": [[1,0,0],[0,1,0],[0,0,1]], "perm": [1,0,2,3,4,5,6,7]}]}"#,
    );
    assert_eq!(
        fanodef(&["invariants", "paper-A", "--action", &bad])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn t1_hull_auts() {
    let t1 = json(&fanodef(&["t1", "paper-P", "--format", "json"]));
    assert_eq!(t1["h0_dim"], 8);
    assert_eq!(t1["euler_holds"], true);
    let h = fanodef(&["hull", "paper-P"]);
    assert!(stdout(&h).contains("(t1^2, t1t2, t3^2, t3t4)"));
    assert_eq!(
        fanodef(&["hull", "paper-P", "--no-h2-t0"]).status.code(),
        Some(1)
    );
    let a = json(&fanodef(&["auts", "paper-P", "--format", "json"]));
    assert_eq!(a["order"], 4);
}
