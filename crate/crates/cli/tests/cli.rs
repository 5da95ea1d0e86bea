//! End-to-end tests driving the built binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn weakis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tempdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("weakis-cli-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_writes_parseable_deterministic_files() {
    let dir = tempdir("gen");
    let out = dir.join("instance.hg");
    let args = [
        "gen",
        "--n",
        "24",
        "--r",
        "4",
        "--delta-max",
        "3",
        "--seed",
        "7",
        "--out",
        path_str(&out),
    ];
    let run = weakis(&args);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let first = fs::read_to_string(&out).unwrap();
    assert!(first.starts_with("24 4 "));

    // Same seed, same bytes.
    weakis(&args);
    assert_eq!(fs::read_to_string(&out).unwrap(), first);

    // JSON flavor parses too.
    let json_out = dir.join("instance.json");
    let run = weakis(&[
        "gen",
        "--n",
        "24",
        "--r",
        "4",
        "--delta-max",
        "3",
        "--seed",
        "7",
        "--out",
        path_str(&json_out),
    ]);
    assert!(run.status.success());
    let body = fs::read_to_string(&json_out).unwrap();
    assert!(body.contains("\"edges\""));
}

#[test]
fn run_single_instance_is_reproducible() {
    let dir = tempdir("run-single");
    let instance = dir.join("h.hg");
    weakis(&[
        "gen",
        "--n",
        "30",
        "--r",
        "5",
        "--delta-max",
        "3",
        "--seed",
        "3",
        "--out",
        path_str(&instance),
    ]);

    let args = [
        "run",
        "--algo",
        "edge-partition",
        "--input",
        path_str(&instance),
        "--alpha",
        "1",
        "--beta",
        "3",
        "--seed",
        "11",
    ];
    let first = weakis(&args);
    assert!(first.status.success());
    let second = weakis(&args);
    assert_eq!(
        first.stdout, second.stdout,
        "same seed must give identical bytes"
    );

    let record: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(record["algo"], "edge-partition");
    assert_eq!(record["valid"], true);
    assert!(record["set_size"].as_u64().unwrap() > 0);
}

#[test]
fn run_trace_emits_round_records() {
    let dir = tempdir("trace");
    let instance = dir.join("h.hg");
    weakis(&[
        "gen",
        "--n",
        "20",
        "--r",
        "4",
        "--delta-max",
        "2",
        "--seed",
        "5",
        "--out",
        path_str(&instance),
    ]);
    let out = dir.join("run.json");
    let run = weakis(&[
        "run",
        "--algo",
        "edge-partition",
        "--input",
        path_str(&instance),
        "--alpha",
        "1",
        "--beta",
        "2",
        "--seed",
        "9",
        "--out",
        path_str(&out),
        "--trace",
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let trace = fs::read_to_string(dir.join("run.json.trace.jsonl")).unwrap();
    assert!(!trace.is_empty());
    for line in trace.lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(record["round"].is_u64());
        assert!(record["messages"].is_u64());
        assert!(record["halted_count"].is_u64());
    }
}

#[test]
fn grid_run_records_pass_reverification() {
    let dir = tempdir("grid");
    let records = dir.join("records.jsonl");
    let run = weakis(&[
        "run",
        "--algo",
        "k-weak-mis",
        "--n",
        "24,48",
        "--r",
        "4,6",
        "--delta-max",
        "2",
        "--k",
        "3",
        "--trials",
        "3",
        "--seed",
        "21",
        "--out",
        path_str(&records),
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let body = fs::read_to_string(&records).unwrap();
    assert_eq!(body.lines().count(), 12, "4 cells x 3 trials");

    let verify = weakis(&["verify", "--records", path_str(&records)]);
    assert!(
        verify.status.success(),
        "{}",
        String::from_utf8_lossy(&verify.stderr)
    );
    let verdict: serde_json::Value = serde_json::from_slice(&verify.stdout).unwrap();
    assert_eq!(verdict["mismatches"], 0);
    assert_eq!(verdict["checked"], 12);
}

#[test]
fn verify_predicate_mode_sets_exit_codes() {
    let dir = tempdir("verify");
    let instance = dir.join("h.hg");
    fs::write(&instance, "3 3 1\n0 1 2\n").unwrap();

    let good = dir.join("good.json");
    fs::write(&good, r#"{"n":3,"members":[0],"origin":"test"}"#).unwrap();
    let run = weakis(&[
        "verify",
        "--predicate",
        "k-weak-maximal",
        "--hypergraph",
        path_str(&instance),
        "--set",
        path_str(&good),
        "--k",
        "1",
    ]);
    assert!(run.status.success());
    let report: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(report["pass"], true);

    let bad = dir.join("bad.json");
    fs::write(&bad, r#"{"n":3,"members":[0,1],"origin":"test"}"#).unwrap();
    let run = weakis(&[
        "verify",
        "--predicate",
        "k-weak-maximal",
        "--hypergraph",
        path_str(&instance),
        "--set",
        path_str(&bad),
        "--k",
        "1",
    ]);
    assert_eq!(run.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(report["pass"], false);
    assert!(!report["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_2() {
    // Unknown flag: clap reports usage, exit 2.
    let run = weakis(&["run", "--no-such-flag"]);
    assert_eq!(run.status.code(), Some(2));
    // Missing required parameter for the algorithm: exit 2.
    let run = weakis(&[
        "run",
        "--algo",
        "edge-partition",
        "--n",
        "10",
        "--r",
        "3",
        "--delta-max",
        "2",
    ]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn bench_reports_rounds_increasing_with_degree() {
    let dir = tempdir("bench");
    let csv_path = dir.join("bench.csv");
    let run = weakis(&[
        "bench",
        "--algo",
        "edge-partition",
        "--n",
        "96",
        "--r",
        "8",
        "--delta-max",
        "2,4,8",
        "--alpha",
        "2",
        "--beta",
        "3",
        "--trials",
        "3",
        "--seed",
        "17",
        "--out",
        path_str(&csv_path),
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("algo,n,r,delta_max"));
    let mut by_degree = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let delta: usize = fields[3].parse().unwrap();
        let success: f64 = fields[10].parse().unwrap();
        let mean_rounds: f64 = fields[11].parse().unwrap();
        assert!((0.0..=1.0).contains(&success));
        assert_eq!(success, 1.0);
        by_degree.push((delta, mean_rounds));
    }
    by_degree.sort_by_key(|&(d, _)| d);
    assert_eq!(by_degree.len(), 3);
    assert!(
        by_degree[0].1 < by_degree[2].1,
        "rounds should grow with the degree: {by_degree:?}"
    );
}

#[test]
fn plot_emits_gnuplot_table() {
    let dir = tempdir("plot");
    let records = dir.join("records.jsonl");
    weakis(&[
        "run",
        "--algo",
        "zero-round",
        "--n",
        "64",
        "--r",
        "8",
        "--delta-max",
        "2",
        "--alpha",
        "1",
        "--beta",
        "6",
        "--trials",
        "5",
        "--seed",
        "2",
        "--out",
        path_str(&records),
    ]);
    let run = weakis(&["plot", "--records", path_str(&records)]);
    assert!(run.status.success());
    let dat = String::from_utf8(run.stdout).unwrap();
    let mut lines = dat.lines();
    assert!(lines.next().unwrap().starts_with("# n r delta_max"));
    assert_eq!(lines.count(), 1);
}

#[test]
fn moser_tardos_records_carry_resamples() {
    let run = weakis(&[
        "run",
        "--algo",
        "moser-tardos",
        "--n",
        "128",
        "--r",
        "64",
        "--delta-max",
        "2",
        "--alpha",
        "1",
        "--beta",
        "63",
        "--trials",
        "2",
        "--seed",
        "4",
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let body = String::from_utf8(run.stdout).unwrap();
    for line in body.lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(record["resamples"].is_u64());
        assert_eq!(record["valid"], true);
    }
}

#[test]
fn bench_zero_round_thousand_trials_reports_success_rate() {
    let run = weakis(&[
        "bench",
        "--algo",
        "zero-round",
        "--n",
        "64",
        "--r",
        "16",
        "--delta-max",
        "3",
        "--alpha",
        "1",
        "--beta",
        "12",
        "--trials",
        "1000",
        "--seed",
        "8",
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let csv = String::from_utf8(run.stdout).unwrap();
    let row = csv.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    let trials: u64 = fields[9].parse().unwrap();
    let success: f64 = fields[10].parse().unwrap();
    assert_eq!(trials, 1000);
    assert!((0.0..=1.0).contains(&success));
}

#[test]
fn verify_coloring_predicates() {
    let dir = tempdir("coloring");
    let instance = dir.join("h.hg");
    fs::write(&instance, "4 4 1\n0 1 2 3\n").unwrap();

    // A rainbow coloring is proper and 1-defective.
    let rainbow = dir.join("rainbow.json");
    fs::write(
        &rainbow,
        r#"{"assignment":{"0":1,"1":2,"2":3,"3":4},"palette_size":4}"#,
    )
    .unwrap();
    let run = weakis(&[
        "verify",
        "--predicate",
        "proper-coloring",
        "--hypergraph",
        path_str(&instance),
        "--coloring",
        path_str(&rainbow),
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );

    // A monochromatic edge of size 4 is 4-defective but not proper.
    let mono = dir.join("mono.json");
    fs::write(
        &mono,
        r#"{"assignment":{"0":1,"1":1,"2":1,"3":1},"palette_size":1}"#,
    )
    .unwrap();
    let run = weakis(&[
        "verify",
        "--predicate",
        "defective-coloring",
        "--hypergraph",
        path_str(&instance),
        "--coloring",
        path_str(&mono),
        "--k",
        "4",
    ]);
    assert!(run.status.success());
    let run = weakis(&[
        "verify",
        "--predicate",
        "proper-coloring",
        "--hypergraph",
        path_str(&instance),
        "--coloring",
        path_str(&mono),
    ]);
    assert_eq!(run.status.code(), Some(1));
}

#[test]
fn verify_matching_predicate() {
    let dir = tempdir("matching");
    let instance = dir.join("h.hg");
    fs::write(&instance, "4 2 1\n0 1\n2 3\n").unwrap();
    let matching = dir.join("m.json");
    fs::write(&matching, "[0,1]").unwrap();
    let run = weakis(&[
        "verify",
        "--predicate",
        "maximal-matching",
        "--hypergraph",
        path_str(&instance),
        "--matching",
        path_str(&matching),
    ]);
    assert!(run.status.success());

    fs::write(&matching, "[]").unwrap();
    let run = weakis(&[
        "verify",
        "--predicate",
        "maximal-matching",
        "--hypergraph",
        path_str(&instance),
        "--matching",
        path_str(&matching),
    ]);
    assert_eq!(run.status.code(), Some(1));
}

#[test]
fn gen_honors_lambda_cap() {
    let dir = tempdir("lambda");
    let out = dir.join("linear.hg");
    let run = weakis(&[
        "gen",
        "--n",
        "20",
        "--r",
        "3",
        "--delta-max",
        "3",
        "--lambda",
        "1",
        "--seed",
        "1",
        "--out",
        path_str(&out),
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let body = fs::read_to_string(&out).unwrap();
    let edges: Vec<Vec<u32>> = body
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            let shared = a.iter().filter(|v| b.contains(v)).count();
            assert!(shared <= 1, "edges share {shared} vertices");
        }
    }
}

#[test]
fn strict_alpha_beta_mode_changes_the_verdict() {
    let dir = tempdir("strict");
    let instance = dir.join("h.hg");
    // One edge {0,1}; vertex 2 is isolated.
    fs::write(&instance, "3 2 1\n0 1\n").unwrap();
    let set = dir.join("s.json");
    // Members {0, 2}: vertex 1 sees the edge holding one member, so the
    // relaxed form passes; the isolated member 2 sees no edge at all, so
    // the strict form fails.
    fs::write(&set, r#"{"n":3,"members":[0,2],"origin":"test"}"#).unwrap();

    let relaxed = weakis(&[
        "verify",
        "--predicate",
        "alpha-beta",
        "--hypergraph",
        path_str(&instance),
        "--set",
        path_str(&set),
        "--alpha",
        "1",
        "--beta",
        "1",
    ]);
    assert!(relaxed.status.success());

    let strict = weakis(&[
        "verify",
        "--predicate",
        "alpha-beta",
        "--hypergraph",
        path_str(&instance),
        "--set",
        path_str(&set),
        "--alpha",
        "1",
        "--beta",
        "1",
        "--strict-alpha-beta",
    ]);
    assert_eq!(strict.status.code(), Some(1));
}
