use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn localdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localdom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn generate(dir: &Path, class: &str, n: usize, seed: u64) -> String {
    let path = dir.join(format!("{}-{n}-{seed}.txt", class.replace(':', "_")));
    let path = path.to_str().unwrap().to_string();
    let out = localdom(&["gen", "--class", class, "--n", &n.to_string(), "--seed", &seed.to_string(), "--out", &path]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = std::fs::read_to_string(generate(dir.path(), "planar", 50, 7)).unwrap();
    let out = localdom(&["gen", "--class", "planar", "--n", "50", "--seed", "7"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), a);
    let other = localdom(&["gen", "--class", "planar", "--n", "50", "--seed", "8"]);
    assert_ne!(String::from_utf8(other.stdout).unwrap(), a);
}

#[test]
fn run_reports_a_dominating_set() {
    let dir = TempDir::new().unwrap();
    let graph = generate(dir.path(), "planar", 60, 3);
    for phase3 in ["lp", "greedy"] {
        let report = json(&localdom(&["run", &graph, "--preset", "planar", "--phase3", phase3]));
        assert_eq!(report["dominates"], true);
        assert_eq!(report["n"], 60);
        assert_eq!(report["phase3"], phase3);
        let parts: u64 = ["D1", "D2", "D3"].iter().map(|k| report[k]["size"].as_u64().unwrap()).sum();
        assert!(report["size"].as_u64().unwrap() <= parts);
        let phases = report["rounds"]["phases"].as_array().unwrap();
        let total: u64 = phases.iter().map(|p| p["rounds"].as_u64().unwrap()).sum();
        assert_eq!(report["rounds"]["total"].as_u64().unwrap(), total);
    }
}

#[test]
fn run_writes_to_out_file() {
    let dir = TempDir::new().unwrap();
    let graph = generate(dir.path(), "outerplanar", 30, 1);
    let out_path = dir.path().join("report.json");
    let out = localdom(&["run", &graph, "--preset", "outerplanar", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(report["preset"], "outerplanar");
}

#[test]
fn verify_compares_with_the_optimum() {
    let dir = TempDir::new().unwrap();
    let graph = generate(dir.path(), "girth5", 30, 2);
    let v = json(&localdom(&["verify", &graph, "--preset", "girth5", "--phase3", "greedy"]));
    let gamma = v["gamma"].as_f64().unwrap();
    let size = v["alg_size"].as_f64().unwrap();
    assert!(gamma >= 1.0 && size >= gamma);
    assert!((v["ratio"].as_f64().unwrap() - size / gamma).abs() < 1e-12);
    assert_eq!(v["within_bound"], true);
}

#[test]
fn verify_budget_exhaustion_is_an_error() {
    let dir = TempDir::new().unwrap();
    // Packing and greedy bounds disagree on a grid, so the root cannot close.
    let mut text = String::new();
    for r in 0..6 {
        for c in 0..6 {
            let v = r * 6 + c;
            if c < 5 {
                text += &format!("{v} {}\n", v + 1);
            }
            if r < 5 {
                text += &format!("{v} {}\n", v + 6);
            }
        }
    }
    let graph = dir.path().join("grid.txt");
    std::fs::write(&graph, text).unwrap();
    let out = localdom(&["verify", graph.to_str().unwrap(), "--budget", "1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn bench_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let out = localdom(&[
        "bench", "--class", "triangle-free", "--count", "3", "--n", "15..25", "--seed", "4", "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_path(csv_path).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        [
            "seed", "n", "m", "gamma", "alg_lp", "alg_greedy", "ratio_lp", "ratio_greedy", "rounds_lp",
            "rounds_greedy"
        ]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let gamma: f64 = row[3].parse().unwrap();
        let lp: f64 = row[4].parse().unwrap();
        assert!(lp >= gamma);
    }
}

#[test]
fn epsilon_accepts_fractions() {
    let dir = TempDir::new().unwrap();
    let graph = generate(dir.path(), "bipartite", 30, 6);
    let report = json(&localdom(&["run", &graph, "--preset", "bipartite", "--epsilon", "1/2"]));
    assert!((report["epsilon"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn bad_inputs_fail_cleanly() {
    let dir = TempDir::new().unwrap();
    let graph = generate(dir.path(), "planar", 10, 0);
    for args in [
        vec!["run", graph.as_str(), "--preset", "nonsense"],
        vec!["run", graph.as_str(), "--epsilon", "0"],
        vec!["run", graph.as_str(), "--phase3", "magic"],
        vec!["run", "/nonexistent/graph.txt"],
        vec!["gen", "--class", "cubic"],
    ] {
        let out = localdom(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn params_file_overrides_preset() {
    let dir = TempDir::new().unwrap();
    let spec = localdom::ClassPreset::outerplanar().to_spec();
    let path = dir.path().join("preset.json");
    std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
    let graph_op = generate(dir.path(), "outerplanar", 40, 9);
    let report = json(&localdom(&["run", &graph_op, "--params", path.to_str().unwrap()]));
    assert_eq!(report["preset"], "outerplanar");
}
