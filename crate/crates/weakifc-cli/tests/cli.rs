//! End-to-end checks of the `ifc` binary: exit codes, file contents and
//! determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ifc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ifc"))
        .arg("--quiet")
        .arg("--out")
        .arg(dir)
        .args(args)
        .output()
        .expect("spawn ifc")
}

fn csv_rows(path: &Path) -> Vec<Vec<f64>> {
    let body = fs::read_to_string(path).unwrap();
    assert!(!body.contains('\r'), "expected \\n line endings");
    body.lines()
        .skip(1)
        .map(|l| {
            l.split(',')
                .map(|c| c.parse::<f64>().unwrap())
                .collect::<Vec<f64>>()
        })
        .collect()
}

#[test]
fn region_endpoints_and_sidecar_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let out = ifc(
        dir.path(),
        &[
            "region", "--tx", "1", "--p1", "6", "--p2", "6", "--a", "0.5477", "--b", "0.5477",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let rows = csv_rows(&dir.path().join("region_t1.csv"));
    assert_eq!(rows.len(), 1024);
    let first = &rows[0];
    let last = rows.last().unwrap();
    assert!((first[0] - 0.0).abs() < 1e-12 && (first[2] - 1.9711).abs() < 1e-3);
    assert!((last[0] - 1.0).abs() < 1e-12 && (last[1] - 1.4037).abs() < 1e-3);

    // round-trip: the sidecar JSON reproduces the vertex list exactly
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("region_t1.json")).unwrap())
            .unwrap();
    let verts = sidecar["vertices"].as_array().unwrap();
    assert!(!verts.is_empty());
    let reserialized = serde_json::to_string(&sidecar).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(sidecar, reparsed);
    assert_eq!(sidecar["metadata"]["log_base"], 2);
}

#[test]
fn region_rejects_strong_interference_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = ifc(
        dir.path(),
        &[
            "region", "--tx", "1", "--p1", "6", "--p2", "6", "--a", "0.5", "--b", "1.5",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains('b'), "message names the violated gain: {stderr}");
}

#[test]
fn region_tx2_interference_free_corner() {
    let dir = tempfile::tempdir().unwrap();
    let out = ifc(
        dir.path(),
        &[
            "region", "--tx", "2", "--a", "0", "--p1", "6", "--p2", "6", "--b", "0",
        ],
    );
    assert!(out.status.success());
    let rows = csv_rows(&dir.path().join("region_t2.csv"));
    // beta = 1 endpoint reaches the rectangle corner
    let last = rows.last().unwrap();
    assert!((last[1] - 1.4037).abs() < 1e-3 && (last[2] - 1.4037).abs() < 1e-3);
}

#[test]
fn compare_fig2_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"p1": 6, "p2": 6, "a2": 0.3, "b2": 0.3}"#).unwrap();
    let out = ifc(dir.path(), &["compare", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    for f in [
        "region_t1.csv",
        "region_t2.csv",
        "intersection.csv",
        "kramer.csv",
        "corners.json",
        "summary.json",
    ] {
        assert!(dir.path().join(f).exists(), "missing {f}");
    }
    let corners: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("corners.json")).unwrap())
            .unwrap();
    assert!((corners["A"][0].as_f64().unwrap() - 1.4037).abs() < 1e-3);
    assert!((corners["A"][1].as_f64().unwrap() - 0.8260).abs() < 1e-3);
    assert!((corners["B"][0].as_f64().unwrap() - 0.8260).abs() < 1e-3);
    assert!((corners["B"][1].as_f64().unwrap() - 1.4037).abs() < 1e-3);

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    let kramer_in_inter = summary["subset_relations"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["inner"] == "kramer" && r["outer"] == "intersection")
        .unwrap();
    assert_eq!(kramer_in_inter["is_subset"], true);
}

#[test]
fn compare_no_interference_all_regions_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"p1": 6, "p2": 6, "a2": 0, "b2": 0, "n_alpha": 128}"#).unwrap();
    assert!(ifc(dir.path(), &["compare", cfg.to_str().unwrap()])
        .status
        .success());
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    for rel in summary["subset_relations"].as_array().unwrap() {
        assert_eq!(rel["is_subset"], true, "{rel:?}");
    }
}

#[test]
fn compare_rejects_strong_gains_and_bad_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"p1": 6, "p2": 6, "a2": 1.5, "b2": 0.3}"#).unwrap();
    assert_eq!(
        ifc(dir.path(), &["compare", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );

    fs::write(&cfg, "{not json").unwrap();
    let out = ifc(dir.path(), &["compare", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn simulate_deterministic_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "simulate", "--p1", "6", "--p2", "6", "--b", "0.5477", "--alpha", "0.5", "--samples",
        "50000", "--seed", "7", "--tol", "0.05",
    ];
    assert!(ifc(dir.path(), &args).status.success());
    let first = fs::read(dir.path().join("report.json")).unwrap();
    assert!(ifc(dir.path(), &args).status.success());
    let second = fs::read(dir.path().join("report.json")).unwrap();
    assert_eq!(first, second, "same seed must give byte-identical reports");

    // statistical noise cannot meet an analytic tolerance: checks fail, exit 4
    let out = ifc(
        dir.path(),
        &[
            "simulate", "--p1", "6", "--p2", "6", "--b", "0.5477", "--alpha", "0.5",
            "--samples", "1000", "--seed", "7", "--tol", "1e-9",
        ],
    );
    assert_eq!(out.status.code(), Some(4));
    assert!(dir.path().join("report.json").exists());

    let out = ifc(
        dir.path(),
        &[
            "simulate", "--p1", "6", "--p2", "6", "--b", "0.5477", "--alpha", "0.5",
            "--samples", "100",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_grid_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = ifc(
        dir.path(),
        &[
            "sweep", "--p1", "6", "--p2", "6", "--a", "0:0.4:0.9", "--b", "0:0.4:0.9",
            "--n-alpha", "64",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let body = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 10, "header + 3x3 grid");
    let cols = lines[0].split(',').count();
    for l in &lines[1..] {
        assert_eq!(l.split(',').count(), cols, "ragged row: {l}");
    }

    // a strong-interference cell is flagged and left empty
    let out = ifc(
        dir.path(),
        &["sweep", "--p1", "1", "--p2", "1", "--a", "1.5", "--b", "0.5"],
    );
    assert!(out.status.success());
    let body = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(body.lines().nth(1).unwrap().contains("not_weak"));

    // empty grid
    let out = ifc(
        dir.path(),
        &["sweep", "--p1", "6:1:5", "--p2", "6", "--a", "0", "--b", "0"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_single_cell_matches_compare() {
    let dir = tempfile::tempdir().unwrap();
    let a = format!("{}", 0.3f64.sqrt());
    assert!(ifc(
        dir.path(),
        &[
            "sweep", "--p1", "6", "--p2", "6", "--a", &a, "--b", &a, "--n-alpha", "256",
        ],
    )
    .status
    .success());
    let body = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let row: Vec<&str> = body.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[4], "ok");
    let a_r1: f64 = row[5].parse().unwrap();
    let a_r2: f64 = row[6].parse().unwrap();
    assert!((a_r1 - 1.40367746).abs() < 1e-6);
    assert!((a_r2 - 0.82603835).abs() < 1e-6);
    let kramer_sum: f64 = row[9].parse().unwrap();
    assert!((kramer_sum - 2.22971581).abs() < 1e-6);
}

#[test]
fn json_format_emits_region_files_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ifc"))
        .args([
            "--quiet",
            "--format",
            "json",
            "--out",
            dir.path().to_str().unwrap(),
            "region",
            "--tx",
            "1",
            "--p1",
            "6",
            "--p2",
            "6",
            "--b2",
            "0.3",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("region_t1.json").exists());
    assert!(!dir.path().join("region_t1.csv").exists());
}
