use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn netdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn generated(dir: &TempDir, model: &str, params: &[&str]) -> PathBuf {
    let path = dir.path().join(format!("{model}-{}.txt", params.join("-")));
    let mut args = vec!["generate", model];
    args.extend(params);
    args.extend(["--out", path.to_str().unwrap()]);
    let out = netdim(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

#[test]
fn analyze_p6_box_counts() {
    let dir = TempDir::new().unwrap();
    let file = generated(&dir, "path", &["6"]);
    let out = netdim(&["analyze", p(&file), "--q", "1"]);
    assert!(out.status.success());
    let report = json(&out);
    let counts: Vec<u64> = report["profile"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["n_boxes"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![6, 3, 2, 2, 2, 1]);
    assert_eq!(report["estimates"][0]["label"], "information_dimension");
}

#[test]
fn analyze_k4_dimension_two() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "k4.txt", "a b\na c\na d\nb c\nb d\nc d\n");
    let report = json(&netdim(&["analyze", p(&file)]));
    let d = report["estimates"][0]["dimension"].as_f64().unwrap();
    assert!((d - 2.0).abs() < 1e-9);
    let d_b = report["box_counting"]["dimension"].as_f64().unwrap();
    assert!((d_b - 2.0).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.txt", "");
    let out = netdim(&["analyze", p(&empty)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no edges"));

    let bad = write(&dir, "bad.txt", "a b\na b c\n");
    let out = netdim(&["analyze", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.txt:2"));

    assert_eq!(netdim(&["analyze"]).status.code(), Some(1));
    assert_eq!(netdim(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(netdim(&["analyze", "x", "--mode", "mean"]).status.code(), Some(1));
    assert_eq!(netdim(&["--help"]).status.code(), Some(0));
    assert_eq!(
        netdim(&["analyze", p(&dir.path().join("missing.txt"))]).status.code(),
        Some(2)
    );

    let k2 = write(&dir, "k2.txt", "a b\n");
    let out = netdim(&["analyze", p(&k2), "--mode", "pointwise", "--lmin", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(json(&out)["estimates"][0]["error"].is_string());
}

#[test]
fn disconnected_input() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "two.txt", "a b\nb c\nx y\n");
    let out = netdim(&["analyze", p(&file)]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("largest of 2 components"));
    let report = json(&out);
    assert_eq!(report["input"]["nodes"], 3);
    assert_eq!(report["input"]["original_nodes"], 5);
    assert!(!stdout(&out).contains("warning"));

    let out = netdim(&["analyze", p(&file), "--strict"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cover_command() {
    let dir = TempDir::new().unwrap();
    let file = generated(&dir, "path", &["6"]);
    let out = netdim(&["cover", p(&file), "3", "--trials", "20", "--dump-boxes"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N_B = 2");
    assert_eq!(lines.len(), 3);
    let mut boxes: Vec<&str> = lines[1..].iter().map(|l| l.split_once(": ").unwrap().1).collect();
    boxes.sort_unstable();
    assert_eq!(boxes, vec!["v0 v1 v2", "v3 v4 v5"]);
    assert!(lines[1].starts_with("box 0: ") && lines[2].starts_with("box 1: "));

    let grid = generated(&dir, "grid", &["3x4"]);
    assert_eq!(stdout(&netdim(&["cover", p(&grid), "1"])), "N_B = 12\n");
    assert_eq!(stdout(&netdim(&["cover", p(&grid), "6"])), "N_B = 1\n");
    assert_eq!(netdim(&["cover", p(&grid), "0"]).status.code(), Some(1));
}

#[test]
fn pajek_input_is_detected() {
    let dir = TempDir::new().unwrap();
    let file = write(
        &dir,
        "net.net",
        "*Vertices 4\n1 \"A\"\n2 \"B\"\n3 \"C\"\n4 \"D\"\n*Arcs\n1 2 1\n2 3 1\n3 4 1\n4 1 1\n",
    );
    let report = json(&netdim(&["analyze", p(&file)]));
    assert_eq!(report["input"]["format"], "pajek");
    assert_eq!(report["input"]["edges"], 4);
    assert_eq!(report["input"]["diameter"], 2);
    let out = netdim(&["cover", p(&file), "2", "--dump-boxes", "--format", "pajek"]);
    assert!(stdout(&out).contains("box 0: A"));
}

#[test]
fn generate_then_analyze_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = netdim(&["generate", "grid", "4x4"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nodes: 16, edges: 24"));
    let file = write(&dir, "grid.txt", &stdout(&out));
    let report = json(&netdim(&["analyze", p(&file)]));
    assert_eq!(report["input"]["nodes"], 16);
    assert_eq!(report["input"]["edges"], 24);
    assert_eq!(report["input"]["diameter"], 6);

    let path = generated(&dir, "path", &["64"]);
    let report = json(&netdim(&["analyze", p(&path)]));
    let d_b = report["box_counting"]["dimension"].as_f64().unwrap();
    assert!((0.8..=1.2).contains(&d_b), "{d_b}");

    let er = generated(&dir, "er", &["50", "0.2"]);
    let first = fs::read(&er).unwrap();
    let again = generated(&dir, "er", &["50", "0.2"]);
    assert_eq!(fs::read(again).unwrap(), first);

    assert_eq!(netdim(&["generate", "grid", "4y4"]).status.code(), Some(1));
    assert_eq!(netdim(&["generate", "path", "0"]).status.code(), Some(1));
    assert_eq!(netdim(&["generate", "er", "50", "0.0001"]).status.code(), Some(3));
}

#[test]
fn sweep_grid_pointwise_strictly_decreasing() {
    let dir = TempDir::new().unwrap();
    let file = generated(&dir, "grid", &["8x8"]);
    let report = json(&netdim(&["sweep", p(&file), "--q-list", "0.5,1,2", "--mode", "pointwise"]));
    let dims: Vec<f64> = report["estimates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["dimension"].as_f64().unwrap())
        .collect();
    assert_eq!(dims.len(), 3);
    assert!(dims[0] > dims[1] && dims[1] > dims[2], "{dims:?}");
    assert_eq!(report["estimates"][1]["label"], "information_dimension");
    assert_eq!(report["estimates"][0]["label"], "tsallis_dimension");
}

#[test]
fn sweep_k4_and_single_q_alias() {
    let dir = TempDir::new().unwrap();
    let file = generated(&dir, "complete", &["4"]);
    let report = json(&netdim(&["sweep", p(&file), "--q-list", "0,1"]));
    let dims: Vec<f64> = report["estimates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["dimension"].as_f64().unwrap())
        .collect();
    assert!((dims[0] - 3.0 / 2f64.ln()).abs() < 1e-9);
    assert!((dims[1] - 2.0).abs() < 1e-9);

    let grid = generated(&dir, "grid", &["5x5"]);
    let sweep = netdim(&["sweep", p(&grid), "--q-list", "1"]);
    let analyze = netdim(&["analyze", p(&grid), "--q", "1"]);
    assert_eq!(sweep.stdout, analyze.stdout);
}

#[test]
fn default_sweep_uses_table_grid() {
    let dir = TempDir::new().unwrap();
    let file = generated(&dir, "cycle", &["12"]);
    let report = json(&netdim(&["sweep", p(&file)]));
    let qs: Vec<f64> = report["settings"]["q_list"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q.as_f64().unwrap())
        .collect();
    assert_eq!(qs, vec![0.1, 0.5, 1.0, 1.5, 2.0, 10.0, 100.0, 1000.0]);
    assert_eq!(report["estimates"].as_array().unwrap().len(), 8);
    assert_eq!(report["settings"]["trials"], 10);
    assert_eq!(report["settings"]["seed"], 42);
    assert_eq!(report["settings"]["mode"], "slope");
}

fn round6(x: f64) -> f64 {
    format!("{x:.5e}").parse().unwrap()
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let dir = TempDir::new().unwrap();
    let file = generated(&dir, "grid", &["6x7"]);
    let args = ["sweep", p(&file), "--q-list", "0.5,1,3", "--mode", "pointwise"];
    let report = json(&netdim(&args));
    let out_csv = dir.path().join("report.csv");
    let mut csv_args = args.to_vec();
    csv_args.extend(["-o", "csv", "--out", p(&out_csv)]);
    assert!(netdim(&csv_args).status.success());
    let csv = fs::read_to_string(out_csv).unwrap();

    let (profiles, estimates) = csv.split_once("\n\n").unwrap();
    assert!(profiles.starts_with("# q=0.5\nl,ln_l,n_boxes,S_q,pointwise_ratio\n"));
    let csv_rows: Vec<Vec<&str>> = profiles
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("l,"))
        .map(|l| l.split(',').collect())
        .collect();
    let json_rows = report["profile"].as_array().unwrap();
    assert_eq!(csv_rows.len(), json_rows.len());
    for (c, j) in csv_rows.iter().zip(json_rows) {
        assert_eq!(c[0].parse::<u64>().unwrap(), j["l"].as_u64().unwrap());
        assert_eq!(c[1].parse::<f64>().unwrap(), round6(j["ln_l"].as_f64().unwrap()));
        assert_eq!(c[2].parse::<u64>().unwrap(), j["n_boxes"].as_u64().unwrap());
        assert_eq!(c[3].parse::<f64>().unwrap(), round6(j["S_q"].as_f64().unwrap()));
        match j["pointwise_ratio"].as_f64() {
            Some(r) => assert_eq!(c[4].parse::<f64>().unwrap(), round6(r)),
            None => assert_eq!(c[4], ""),
        }
    }

    let est_lines: Vec<&str> = estimates.lines().skip(1).collect();
    let json_est = report["estimates"].as_array().unwrap();
    assert_eq!(est_lines.len(), json_est.len() + 1);
    assert!(est_lines[0].starts_with(",box_counting,"));
    for (line, j) in est_lines[1..].iter().zip(json_est) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0].parse::<f64>().unwrap(), round6(j["q"].as_f64().unwrap()));
        assert_eq!(cells[2].parse::<f64>().unwrap(), round6(j["dimension"].as_f64().unwrap()));
        assert_eq!(cells[6], "pointwise");
    }
}

#[test]
fn json_schema_keys() {
    let dir = TempDir::new().unwrap();
    let file = generated(&dir, "star", &["9"]);
    let report = json(&netdim(&["analyze", p(&file), "--q", "2"]));
    for key in ["input", "settings", "profile", "estimates"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    let est = &report["estimates"][0];
    for key in ["q", "dimension", "slope", "intercept", "r2", "mode"] {
        assert!(est.get(key).is_some(), "missing estimates[].{key}");
    }
    assert!(report["profile"][0]["pointwise_ratio"].is_null());
    assert!(report["profile"][1]["pointwise_ratio"].is_number());
}
