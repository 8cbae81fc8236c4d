use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corrclust"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn gen(dir: &TempDir, level: &str) -> (String, String) {
    let (g, c) = (path(dir, "g.txt"), path(dir, "c.txt"));
    ok(&[
        "gen",
        "--level",
        level,
        "--seed",
        "5",
        "-o",
        &g,
        "--circles",
        &c,
    ]);
    (g, c)
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn cluster_recovers_clean_planted_instance() {
    let dir = TempDir::new().unwrap();
    let (g, _) = gen(&dir, "0");
    let clusters = path(&dir, "out.txt");
    for metric in ["exact", "sparse"] {
        for mode in [
            &["--mode", "theory"][..],
            &["--mode", "swept", "--r1", "0.7"][..],
        ] {
            let mut args = vec![
                "cluster", "-i", &g, "--metric", metric, "--json", "-o", &clusters,
            ];
            args.extend_from_slice(mode);
            let r = json(&ok(&args));
            assert_eq!(r["schema"], 1);
            assert_eq!(r["objective_linf"], 0.0);
            assert_eq!(r["num_clusters"], 10);
            assert_eq!(fs::read_to_string(&clusters).unwrap().lines().count(), 10);
        }
    }
}

#[test]
fn cluster_report_options() {
    let dir = TempDir::new().unwrap();
    let (g, _) = gen(&dir, "2");
    let dump = path(&dir, "d.csv");
    let r = json(&ok(&[
        "cluster",
        "-i",
        &g,
        "--json",
        "--per-vertex",
        "--dump-metric",
        &dump,
    ]));
    assert_eq!(r["disagreements"].as_array().unwrap().len(), 100);
    assert_eq!(r["fractional_cost"].as_array().unwrap().len(), 100);
    assert!(fs::read_to_string(&dump)
        .unwrap()
        .starts_with("u,v,num,den\n"));

    let r = json(&ok(&[
        "cluster", "-i", &g, "--metric", "exact", "--mode", "approx", "--json",
    ]));
    assert_eq!(
        (r["mode"].as_str(), r["r1"].as_f64(), r["r2"].as_f64()),
        (Some("approx-theory"), Some(0.2), Some(0.4))
    );

    let r = json(&ok(&[
        "cluster",
        "-i",
        &g,
        "--metric",
        "sampled",
        "--epsilon",
        "0.02",
        "--seed",
        "3",
        "--json",
    ]));
    assert_eq!(
        (r["algorithm"].as_str(), r["epsilon"].as_f64()),
        (Some("sampled"), Some(0.02))
    );

    // The rounding constants do not exist for this ε.
    assert!(
        !run(&["cluster", "-i", &g, "--metric", "sampled", "--mode", "approx"])
            .status
            .success()
    );
}

#[test]
fn same_seed_same_report() {
    let dir = TempDir::new().unwrap();
    let (g, _) = gen(&dir, "4");
    let strip = |s: String| {
        let mut v = json(&s);
        v.as_object_mut().unwrap().remove("runtime_ms");
        v
    };
    let args = [
        "cluster",
        "-i",
        &g,
        "--metric",
        "sampled",
        "--epsilon",
        "0.9",
        "--seed",
        "11",
        "--json",
    ];
    assert_eq!(strip(ok(&args)), strip(ok(&args)));
}

#[test]
fn pivot_and_oracle() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "p.txt");
    fs::write(&p, "# path\n10 20\n20 30\n").unwrap();
    let r = json(&ok(&["pivot", "-i", &p, "--trials", "200", "--json"]));
    assert_eq!(r["mean_objective_linf"], 1.0);

    let out = path(&dir, "w.txt");
    let r = json(&ok(&["oracle", "-i", &p, "--json", "-o", &out]));
    assert_eq!(r["opt"], 1);
    assert_eq!(r["witness"], serde_json::json!([[10, 20, 30]]));
    assert_eq!(fs::read_to_string(&out).unwrap(), "10 20 30\n");

    let big = path(&dir, "big.txt");
    let edges: String = (0..13).map(|i| format!("{i} {}\n", i + 1)).collect();
    fs::write(&big, edges).unwrap();
    assert!(!run(&["oracle", "-i", &big]).status.success());
}

#[test]
fn eval_reports_containment() {
    let dir = TempDir::new().unwrap();
    let (g, c) = gen(&dir, "1");
    let r = json(&ok(&[
        "eval",
        "-i",
        &g,
        "--circles",
        &c,
        "--pivot-trials",
        "20",
        "--json",
    ]));
    assert_eq!(
        (r["vertices"].as_u64(), r["pivot_trials"].as_u64()),
        (Some(100), Some(20))
    );
    let rows = r["containment"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows
        .iter()
        .all(|row| row["fraction"].as_f64().unwrap() >= 0.9));

    let text = ok(&["eval", "-i", &g, "--circles", &c, "--pivot-trials", "5"]);
    assert!(text.contains("best_circle"));
}

#[test]
fn sweep_row_counts() {
    let dir = TempDir::new().unwrap();
    let (g, _) = gen(&dir, "1");
    let lines = |s: &str| s.lines().count();
    assert_eq!(lines(&ok(&["sweep", "-i", &g])), 20);
    assert_eq!(lines(&ok(&["sweep", "-i", &g, "--radii", "0.7"])), 2);
    let csv = path(&dir, "s.csv");
    ok(&[
        "sweep", "-i", &g, "--grid", "full", "--metric", "exact", "-o", &csv,
    ]);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(lines(&text), 362);
    assert!(text.starts_with("algorithm,r1,r2,"));
}

#[test]
fn bad_inputs_fail_cleanly() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.txt");
    fs::write(&bad, "1 2\nx y\n").unwrap();
    let out = run(&["cluster", "-i", &bad]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    assert!(!run(&["cluster", "-i", "/nonexistent/file"])
        .status
        .success());
    let g = path(&dir, "g.txt");
    fs::write(&g, "1 2\n").unwrap();
    assert!(!run(&["cluster", "-i", &g, "--r1", "1.5"]).status.success());
    assert!(
        !run(&["cluster", "-i", &g, "--metric", "sampled", "--epsilon", "0"])
            .status
            .success()
    );
    assert!(!run(&["gen", "--level", "1", "--flips", "3", "-o", &g])
        .status
        .success());
    assert!(Path::new(&g).exists());
}
