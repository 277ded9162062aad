use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recip-series")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn certify_tower_json() {
    let o = run(&["certify", "--spec", &fixture("tower.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness_N"], 1);
    assert_eq!(v["D"], 1);
    assert_eq!(v["tail_estimator"], "ratio");
    assert_eq!(v["lhs_log2_upper"].as_str().unwrap().parse::<f64>().unwrap(), -8.0);
    assert_eq!(v["tail_assumption"]["kind"], "geometric_floor");

    let o = run(&["certify", "--spec", &fixture("tower.json"), "--height-max", "2^10"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness_N"], 2);
}

#[test]
fn recheck_roundtrip_and_tamper() {
    let o = run(&["certify", "--spec", &fixture("tower.json")]);
    let dir = std::env::temp_dir().join(format!("recip-series-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, &o.stdout).unwrap();
    let r = run(&["recheck", "--certificate", good.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0), "{}", stdout(&r));

    let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
    v["house_log2_upper"][0] = Value::String("40".into());
    let bad = dir.join("bad.json");
    std::fs::write(&bad, serde_json::to_vec(&v).unwrap()).unwrap();
    let r = run(&["recheck", "--certificate", bad.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(1));
    assert!(stdout(&r).starts_with("invalid"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn dth_root_tower_certifies() {
    let o = run(&["certify", "--spec", &fixture("sqrt_tower.json"), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness N = 1"));
}

#[test]
fn hypothesis_violation_exits_1() {
    for f in ["identity.json", "surds.json"] {
        let o = run(&["certify", "--spec", &fixture(f)]);
        assert_eq!(o.status.code(), Some(1), "{f}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["status"], "hypotheses_not_met");
    }
    let o = run(&["analyze", "--spec", &fixture("identity.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[VIOLATED] polynomial growth floor"));
}

#[test]
fn malformed_inputs_exit_2() {
    for args in [
        vec!["certify".to_string(), "--spec".into(), fixture("empty.json")],
        vec!["analyze".into(), "--spec".into(), fixture("missing.json")],
        vec!["certify".into(), "--spec".into(), fixture("tower.json"), "--n-range".into(), "0..3".into()],
        vec!["certify".into(), "--spec".into(), fixture("tower.json"), "--n-range".into(), "3..1".into()],
        vec!["certify".into(), "--spec".into(), fixture("tower.json"), "--estimators".into(), "magic".into()],
        vec!["frobnicate".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn no_witness_exits_3() {
    let o = run(&["certify", "--spec", &fixture("squares.json")]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["report"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 50);
    assert!(v["report"]["note"].is_string());

    let o = run(&["certify", "--spec", &fixture("golden.json"), "--format", "text"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("no witness found"));
}

#[test]
fn sum_info_outputs_and_cap() {
    let o = run(&["sum-info", "--spec", &fixture("halves.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("gamma_N = 3/4"), "{s}");
    assert!(s.contains("degree 1 <= bound 1"));

    let o = run(&["sum-info", "--spec", &fixture("surds.json")]);
    let s = stdout(&o);
    assert!(s.contains("36x^4 - 60x^2 + 1"), "{s}");
    assert!(s.contains("degree 4 <= bound 4"));

    let o = run(&["sum-info", "--spec", &fixture("cubics.json")]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("243"));
}

#[test]
fn check_lemmas_counts_and_zero_trials() {
    let o = run(&["check-lemmas", "--trials", "10", "--seed", "3", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("[pass]").count(), 5, "{s}");

    let o = run(&["check-lemmas", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 trials"));
}

#[test]
fn analyze_json_is_stable() {
    let args = ["analyze", "--spec", &fixture("cubics.json"), "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 5);
    assert_eq!(v["terms"][0]["degree"], 3);
}

#[test]
fn help_and_version() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    let h = stdout(&run(&["certify", "--help"]));
    for flag in ["--spec", "--degree", "--dcap", "--height-max", "--epsilon", "--n-range", "--estimators", "--format"] {
        assert!(h.contains(flag), "{flag}");
    }
}
