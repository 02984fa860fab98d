use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clustertest")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn gen(dir: &Path, name: &str, family: &str, extra: &[&str]) -> String {
    let path = dir.join(name);
    let path = path.to_str().unwrap().to_string();
    let mut args = vec!["gen", "--family", family, "--seed", "1", "--graph", &path];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn gen_writes_graph_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "g.txt", "two-cluster", &["--n", "16", "--d", "4", "--cross", "2"]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("32 5\n"));
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{path}.json")).unwrap()).unwrap();
    assert_eq!(side["seed"], 1);
    assert!(side["certificates"]["phiHat"].as_f64().unwrap() > 0.0);
}

#[test]
fn test_report_is_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "g.txt", "two-cluster", &["--n", "32", "--d", "4", "--cross", "2"]);
    let reports: Vec<serde_json::Value> = ["a.json", "b.json"]
        .iter()
        .map(|name| {
            let json = dir.path().join(name);
            let out = run(&[
                "test",
                "--graph",
                &path,
                "--seed",
                "7",
                "--rounds",
                "3",
                "--walk-len",
                "30",
                "--json",
                json.to_str().unwrap(),
            ]);
            assert!(out.status.success());
            assert!(stdout(&out).contains("accept"));
            serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap()
        })
        .collect();
    assert_eq!(reports[0], reports[1]);
    for key in ["verdict", "rejectReason", "roundsExecuted", "oracleQueries", "seed", "params", "rounds"] {
        assert!(reports[0].get(key).is_some(), "missing {key}");
    }
    assert_eq!(reports[0]["seed"], 7);
}

#[test]
fn reject_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "k.txt", "k-cluster", &["--n", "32", "--d", "4", "--k", "4"]);
    let out = run(&["test", "--graph", &path, "--seed", "3", "--rounds", "10", "--walk-len", "60"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("reject"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["test", "--graph", "/definitely/not/here.txt"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 2\n0 1\n1 1\n").unwrap();
    let out = run(&["spectrum", "--graph", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paper_mode_on_a_small_graph_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "g.txt", "random-regular", &["--n", "64", "--d", "4"]);
    let out = run(&["test", "--graph", &path, "--mode", "paper", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Lambda"));
}

#[test]
fn verify_emits_json_lines() {
    let out = run(&["verify", "--suite", "gram", "--trials", "200", "--seed", "4"]);
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["lemma"], "gram-collinearity");
    assert_eq!(lines[0]["verdict"], "pass");
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = run(&[
        "bench",
        "--sizes",
        "256",
        "--seeds",
        "1",
        "--rounds",
        "2",
        "--walk-len",
        "20",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,mean_queries,queries_per_n"));
    assert!(lines.next().unwrap().starts_with("256,"));
}
