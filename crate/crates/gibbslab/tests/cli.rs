use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn gibbslab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gibbslab"))
        .args(args)
        .current_dir(dir)
        .env("GIBBSLAB_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

const NN: &str = r#"{"mode":"shift_invariant","entries":[{"shape":[[0]],"table":{"1":0.7}},{"shape":[[0],[1]],"table":{"00":-0.4}}]}"#;

#[test]
fn heights_csv_has_one_row_per_radius() {
    let dir = scratch("heights");
    let out = gibbslab(&dir, &["zoo", "heights", "--i-max", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# {"));
    assert_eq!(lines[1], "i,psi,ball_2d,ratio,ball_3d");
    assert_eq!(lines.len(), 2 + 5);
    assert!(lines[2].starts_with("1,2,5,"));
}

#[test]
fn marker_search_then_verify() {
    let dir = scratch("markers");
    let out = gibbslab(&dir, &["markers", "search", "--k", "2", "--out", "marker.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let ok = gibbslab(&dir, &["markers", "verify", "marker.json"]);
    assert_eq!(ok.status.code(), Some(0));
    let report = json(&ok);
    assert_eq!(report["result"]["psi"], report["result"]["psi_expected"]);
    assert!(report["manifest"]["inputs"]["marker.json"].is_string());

    let mut data: Value = serde_json::from_str(&fs::read_to_string(dir.join("marker.json")).unwrap()).unwrap();
    data["v"] = data["u"].clone();
    fs::write(dir.join("bad.json"), data.to_string()).unwrap();
    let bad = gibbslab(&dir, &["markers", "verify", "bad.json"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["result"]["witness"], "Ham(u, v) = 0");
}

#[test]
fn kozlov_exit_codes() {
    let dir = scratch("kozlov");
    fs::write(dir.join("nn.json"), NN).unwrap();
    let base = ["kozlov", "--space", "hardcore(1)", "--cocycle", "nn.json"];
    let good = gibbslab(&dir, &[&base[..], &["--window=-8..8", "--chain", "-1..1;-2..2;-3..3"]].concat());
    assert_eq!(good.status.code(), Some(0));
    let report = json(&good);
    assert!(report["certificate"]["max_error"].as_f64().unwrap() <= 1e-10);
    assert_eq!(report["mode"], "site_indexed");

    let small = gibbslab(&dir, &[&base[..], &["--window=-2..2", "--chain", "-2..2"]].concat());
    assert_eq!(small.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&small.stderr).contains("window"));
}

#[test]
fn sullivan_output_feeds_norms() {
    let dir = scratch("sullivan");
    fs::write(dir.join("nn.json"), NN).unwrap();
    let out = gibbslab(
        &dir,
        &["sullivan", "--space", "hardcore(1)", "--cocycle", "nn.json", "--n", "4", "--out", "phi.json", "--report", "rep.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let rep: Value = serde_json::from_str(&fs::read_to_string(dir.join("rep.json")).unwrap()).unwrap();
    assert_eq!(rep["result"]["rows"][0]["within_three"], true);
    let norms = gibbslab(&dir, &["norms", "--space", "hardcore(1)", "--interaction", "phi.json"]);
    assert_eq!(norms.status.code(), Some(0));
    let v = json(&norms);
    assert!((v["result"]["vs"]["value"].as_f64().unwrap() - 1.5).abs() < 1e-9);
    assert_eq!(v["result"]["sullivan"]["mode"], "exact");
}

#[test]
fn sunny_side_up_is_falsified() {
    let dir = scratch("tmp");
    let out = gibbslab(&dir, &["space", "check-tmp", "--space", "sunny(1)", "--b", "-1..1", "--window", "-3..3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["result"]["witness"]["glued"].is_object());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = scratch("determinism");
    let args = ["markers", "report", "--k", "2", "--sullivan-samples", "500"];
    let a = gibbslab(&dir, &args);
    let b = gibbslab(&dir, &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_gibbslab")).args(args).current_dir(&dir).env("GIBBSLAB_WORKERS", "1").output().unwrap();
    let strip = |o: &Output| {
        let mut v = json(o);
        v["manifest"].as_object_mut().unwrap().remove("workers");
        v
    };
    assert_eq!(strip(&a), strip(&c));
}

#[test]
fn bad_usage_exits_two() {
    let dir = scratch("usage");
    assert_eq!(gibbslab(&dir, &["zoo", "heights", "--i-max", "0"]).status.code(), Some(2));
    assert_eq!(gibbslab(&dir, &["norms", "--space", "nosuch(1)", "--interaction", "x.json"]).status.code(), Some(2));
    assert_eq!(gibbslab(&dir, &["markers", "verify", "missing.json"]).status.code(), Some(2));
}
