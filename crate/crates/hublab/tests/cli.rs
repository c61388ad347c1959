use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hublab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hublab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn gen_label_stats_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (gr, hl) = (path(dir.path(), "p3.gr"), path(dir.path(), "p3.hl"));
    assert_eq!(hublab(&["gen", "--family", "path", "--n", "3", "--out", &gr]).status.code(), Some(0));
    assert_eq!(hublab(&["label", "build", &gr, "--method", "pruned", "--out", &hl]).status.code(), Some(0));
    let o = hublab(&["stats", "diameter", &hl]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
    let o = hublab(&["stats", "wiener", &gr]);
    assert_eq!(stdout(&o).trim(), "8");
    let o = hublab(&["query", "ecc", &gr, "--vertex", "0"]);
    assert_eq!(stdout(&o).trim(), "0 2 2");
    let o = hublab(&["label", "validate", &gr, "--labels", &hl, "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid"));
}

#[test]
fn harary_of_p3_is_five_halves() {
    let dir = tempfile::tempdir().unwrap();
    let gr = path(dir.path(), "p3.gr");
    hublab(&["gen", "--family", "path", "--n", "3", "--out", &gr]);
    let o = hublab(&["index", &gr, "--which", "harary", "--which", "szeged", "--which", "pi"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["harary"]["num"], 5);
    assert_eq!(v["harary"]["den"], 2);
    assert_eq!(v["szeged"], 4);
    assert_eq!(v["pi"], 2);
    let o = hublab(&["oracle", "index", &gr]);
    let w: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w["harary"], v["harary"]);
    assert_eq!(w["wiener"], 4);
}

#[test]
fn engine_agrees_with_oracle_command() {
    let dir = tempfile::tempdir().unwrap();
    let gr = path(dir.path(), "cp.gr");
    let o = hublab(&[
        "--seed", "5", "gen", "--family", "core-periphery", "--n", "60", "--core", "6", "--extra", "2", "--out", &gr,
    ]);
    assert_eq!(o.status.code(), Some(0));
    for mode in ["source", "min", "max", "roundtrip"] {
        let a = hublab(&["query", "dsum", &gr, "--mode", mode]);
        let b = hublab(&["oracle", "dsum", &gr, "--mode", mode]);
        assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(stdout(&a), stdout(&b), "mode {mode}");
    }
}

#[test]
fn twdnc_and_diamk_match_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let (gr, td) = (path(dir.path(), "kt.gr"), path(dir.path(), "kt.td"));
    hublab(&["--seed", "3", "gen", "--family", "partial-ktree", "--n", "80", "--k", "3", "--out", &gr, "--td-out", &td]);
    let a = hublab(&["twdnc", &gr, "--td", &td, "--audit"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = hublab(&["oracle", "twdnc", &gr]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(hublab(&["diamk", &gr, "--k", "9"]).status.code(), Some(4));
    for k in ["2", "3", "4"] {
        let a = hublab(&["diamk", &gr, "--k", k, "--check-coloring"]);
        let b = hublab(&["oracle", "diamk", &gr, "--k", k]);
        assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(stdout(&a).lines().next(), stdout(&b).lines().next(), "k {k}");
    }
}

#[test]
fn diamk_accepts_a_star() {
    let dir = tempfile::tempdir().unwrap();
    let gr = path(dir.path(), "s.gr");
    hublab(&["gen", "--family", "star", "--n", "12", "--out", &gr]);
    assert_eq!(stdout(&hublab(&["diamk", &gr, "--k", "2"])).trim(), "yes");
    assert!(stdout(&hublab(&["diamk", &gr, "--k", "1"])).starts_with("no\nwitness"));
}

#[test]
fn verify_writes_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let json = path(dir.path(), "report.json");
    let o = hublab(&["--json", &json, "verify", "--n", "40", "--seeds", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["schema"], "hublab/1");
    assert_eq!(r["command"], "verify");
    assert!(r["verdicts"].as_array().unwrap().iter().all(|v| v["passed"] == true));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.gr");
    std::fs::write(&bad, "p 2 1 undirected unweighted\n0 7\n").unwrap();
    assert_eq!(hublab(&["stats", "diameter", &bad]).status.code(), Some(3));
    assert_eq!(hublab(&["stats", "nonsense", &bad]).status.code(), Some(3));
    assert_eq!(hublab(&["--help"]).status.code(), Some(0));

    let gr = path(dir.path(), "k.gr");
    hublab(&["gen", "--family", "complete", "--n", "20", "--out", &gr]);
    assert_eq!(hublab(&["stats", "diameter", &gr, "--cap", "4"]).status.code(), Some(4));

    // Truncated labels no longer cover every pair.
    let p = path(dir.path(), "p.gr");
    let hl = path(dir.path(), "p.hl");
    hublab(&["gen", "--family", "path", "--n", "4", "--out", &p]);
    std::fs::write(&hl, "hl 4 1 exact\nout 0 0:0\nin 0 0:0\nout 1 1:0\nin 1 1:0\nout 2 2:0\nin 2 2:0\nout 3 3:0\nin 3 3:0\n").unwrap();
    assert_eq!(hublab(&["label", "validate", &p, "--labels", &hl]).status.code(), Some(2));
}
