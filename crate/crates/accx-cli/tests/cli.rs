//! End-to-end tests of the `accx` binary.

use std::path::Path;
use std::process::{Command, Output};

fn accx(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_accx"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn convert_reports_doubled_undirected_counts() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("tri.txt"), "0 1\n1 2\n0 2\n").unwrap();
    let out = accx(&["convert", "tri.txt", "-o", "tri.accx"], dir.path());
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("V=3 E=6"), "{}", stdout(&out));
    assert!(dir.path().join("tri.accx").exists());
}

#[test]
fn convert_reverse_flag_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.txt"), "0 1 2.5\n2 1 3.5\n").unwrap();
    let out = accx(
        &["convert", "g.txt", "-o", "g.accx", "--directed", "--reverse"],
        dir.path(),
    );
    assert!(out.status.success());
    // Re-encode the binary; counts survive.
    let out = accx(&["convert", "g.accx", "-o", "g2.accx", "--directed"], dir.path());
    assert!(stdout(&out).contains("V=3 E=2"));
    let a = std::fs::read(dir.path().join("g.accx")).unwrap();
    let ga = accx_core::graph::decode_csr(&a).unwrap();
    assert!(ga.has_in_view());
}

#[test]
fn convert_reports_parse_error_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "0 1\nnot an edge\n").unwrap();
    let out = accx(&["convert", "bad.txt", "-o", "x.accx"], dir.path());
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn run_bfs_with_verification_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("path.txt"), "0 1\n1 2\n2 3\n3 4\n").unwrap();
    let out = accx(&["run", "bfs", "path.txt", "--verify"], dir.path());
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn run_sssp_rejects_zero_weight() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("z.txt"), "0 1 0\n").unwrap();
    let out = accx(&["run", "sssp", "z.txt"], dir.path());
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("non-positive weight"), "{err}");
}

#[test]
fn run_trace_row_count_matches_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = accx(
        &["gen", "uniform", "--vertices", "300", "--edges", "2000", "--undirected", "-o", "u.accx"],
        dir.path(),
    );
    assert!(out.status.success());
    let out = accx(
        &["run", "bfs", "u.accx", "--trace", "t.csv", "--json", "--repeat", "3"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let iterations = report["iterations"].as_u64().unwrap();
    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert_eq!(csv.lines().count() as u64 - 1, iterations);
    assert_eq!(report["repeats"], 3);
    assert!(report["wall_ns_min"].as_u64().unwrap() <= report["wall_ns_mean"].as_u64().unwrap());
}

#[test]
fn run_pagerank_verifies_on_generated_graph() {
    let dir = tempfile::tempdir().unwrap();
    accx(
        &["gen", "uniform", "--vertices", "400", "--edges", "3000", "--seed", "5", "-o", "g.accx"],
        dir.path(),
    );
    let out = accx(&["run", "pagerank", "g.accx", "--verify"], dir.path());
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn plan_worked_example_and_deadlock_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = accx(
        &["plan", "--phases", "push,pull,push", "--strategy", "all", "--json"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let plan: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(plan["launch_count"], 1);
    let kernel = &plan["launches"][0]["kernels"][0];
    assert_eq!(kernel["cta_count"], 60);
    assert_eq!(kernel["registers_per_thread"], 110);
    assert_eq!(kernel["barrier"]["verdict"], "completed");
    assert_eq!(plan["comparison"]["none"], 12);
    assert_eq!(plan["comparison"]["selective"], 3);

    // Forcing one extra CTA over the computed occupancy deadlocks and the
    // command exits nonzero.
    let out = accx(
        &[
            "plan",
            "--phases",
            "push,pull,push",
            "--strategy",
            "all",
            "--override-launch",
            "61",
        ],
        dir.path(),
    );
    assert!(!out.status.success());
    assert!(stdout(&out).contains("DEADLOCKED"), "{}", stdout(&out));
}

#[test]
fn plan_from_a_real_trace_counts_direction_changes() {
    let dir = tempfile::tempdir().unwrap();
    accx(
        &["gen", "rmat", "--scale", "11", "--avg-degree", "16", "--undirected", "--seed", "2", "-o", "r.accx"],
        dir.path(),
    );
    let out = accx(&["run", "bfs", "r.accx", "--trace", "t.csv"], dir.path());
    assert!(out.status.success());

    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let directions: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    let changes = directions.windows(2).filter(|w| w[0] != w[1]).count() as u64;

    let out = accx(
        &["plan", "--trace", "t.csv", "--strategy", "selective", "--json"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let plan: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(plan["launch_count"].as_u64().unwrap(), 1 + changes);
}

#[test]
fn gen_is_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.accx", "b.accx"] {
        accx(
            &["gen", "rmat", "--scale", "8", "--seed", "9", "--weights", "1,4", "-o", name],
            dir.path(),
        );
    }
    let a = std::fs::read(dir.path().join("a.accx")).unwrap();
    let b = std::fs::read(dir.path().join("b.accx")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn run_kcore_and_bp_verify() {
    let dir = tempfile::tempdir().unwrap();
    accx(
        &["gen", "uniform", "--vertices", "500", "--edges", "4000", "--undirected", "--weights", "0.1,0.9", "--seed", "3", "-o", "g.accx"],
        dir.path(),
    );
    let out = accx(&["run", "kcore", "g.accx", "--k", "8", "--verify"], dir.path());
    assert!(out.status.success(), "{out:?}");
    let out = accx(
        &["run", "bp", "g.accx", "--iterations", "10", "--prior", "0.3", "--verify", "--deterministic"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
}
