use std::path::Path;
use std::process::{Command, Output};

use polytile::read_off;

fn polytile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polytile")).args(args).output().expect("run polytile")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn table1_csv_is_ordered_with_decreasing_areas() {
    let out = polytile(&["table1", "--format", "csv"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "name,n,surface_area,expected,delta,tolerance,status,provenance");
    assert_eq!(lines.len(), 11);
    assert!(text.contains("cube,6,6.0000"));
    let rows: Vec<Vec<&str>> = lines[1..].iter().map(|l| l.split(',').collect()).collect();
    let faces: Vec<usize> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(faces.windows(2).all(|w| w[0] < w[1]));
    let areas: Vec<f64> = rows.iter().filter_map(|r| r[2].parse().ok()).collect();
    assert!(areas.windows(2).all(|w| w[0] > w[1]));
    // Rows that could not be built are explained on stderr and set the exit code.
    let errors = rows.iter().filter(|r| r[6] == "error").count();
    assert_eq!(out.status.code(), Some(if errors > 0 { 3 } else { 0 }));
    assert_eq!(stderr(&out).lines().count(), errors);
}

#[test]
fn table1_json_parses() {
    let out = polytile(&["table1", "--format", "json", "--quiet"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 10);
}

#[test]
fn built_cube_checks_tangent() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cube.off");
    let out = polytile(&["build", "cube", "--out", path(&file)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let out = polytile(&["check", path(&file), "--lindelof"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("max residual 0.0000"), "{text}");
    assert!(text.contains("unit-volume area 6.0000"));
    let json = polytile(&["check", path(&file), "--lindelof", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(value["faces"], 6);
    assert!(value["lindelof"]["max_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn facevectors_lists_every_vector() {
    let out = polytile(&["facevectors", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 7);
    assert_eq!(text.lines().next().unwrap(), "x3,x4,even_side_sum,euler_admissible");
    assert!(stderr(&out).contains("= 6"));
    let quiet = polytile(&["facevectors", "5", "--quiet"]);
    assert!(quiet.stderr.is_empty());
}

#[test]
fn prism_and_sommerville_outputs() {
    let out = polytile(&["prism", "--ngon", "6", "--format", "csv"]);
    let text = stdout(&out);
    let values: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((values[0] - 2f64.cbrt() * 3f64.powf(-1.0 / 6.0)).abs() < 1e-12);
    assert!((values[1] - 5.7191).abs() < 5e-4);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s2.off");
    assert!(polytile(&["sommerville", "2", "--out", path(&file)]).status.success());
    let p = read_off(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert!((p.measures().unwrap().surface_area - 7.9635).abs() < 5e-4);
}

#[test]
fn truncation_costs_fall_below_the_cube() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cube.off");
    polytile(&["build", "cube", "--out", path(&file)]);
    let out = polytile(&["truncate-exp", path(&file), "--vertex", "3", "--steps", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let costs: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(costs.len(), 5);
    assert!(costs.iter().all(|&c| c < 216.0));
    assert!(costs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn optimize_writes_the_triangular_prism() {
    let dir = tempfile::tempdir().unwrap();
    let ty = dir.path().join("prism.type");
    std::fs::write(&ty, "# triangular prism\nc b a\nd e f\na b e d\nb c f e\nc a d f\n").unwrap();
    let file = dir.path().join("prism.off");
    let out = polytile(&["optimize", "--type", path(&ty), "--out", path(&file), "--quiet"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let p = read_off(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert!((p.measures().unwrap().surface_area - 6.5467).abs() < 1e-3);
    let trace: Vec<f64> = stdout(&out).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(trace.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn errors_go_to_stderr_with_their_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = polytile(&["build", "no-such-solid", "--out", path(&dir.path().join("x.off"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty() && stderr(&out).contains("no-such-solid"));

    let bad = dir.path().join("bad.off");
    std::fs::write(&bad, "OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 9\n").unwrap();
    let out = polytile(&["check", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty() && stderr(&out).contains("line 7"), "{}", stderr(&out));

    assert_eq!(polytile(&["sommerville", "7", "--out", "x.off"]).status.code(), Some(2));
    assert_eq!(polytile(&["facevectors", "3"]).status.code(), Some(2));
    assert_eq!(polytile(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(polytile(&["prism"]).status.code(), Some(2));
    assert_eq!(polytile(&["--help"]).status.code(), Some(0));
}

#[test]
fn open_surfaces_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let open = dir.path().join("open.off");
    std::fs::write(&open, "OFF\n4 3 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 1 2 3\n").unwrap();
    let out = polytile(&["check", path(&open)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn symmetric_seeds_keep_their_symmetry() {
    let dir = tempfile::tempdir().unwrap();
    let ty = dir.path().join("prism.type");
    std::fs::write(&ty, "c b a\nd e f\na b e d\nb c f e\nc a d f\n").unwrap();
    let seed = dir.path().join("seed.off");
    polytile(&["build", "triangular-prism", "--out", path(&seed)]);
    let file = dir.path().join("out.off");
    for group in ["D3h", "C3v", "Cs"] {
        let out = polytile(&[
            "optimize",
            "--type",
            path(&ty),
            "--seed",
            path(&seed),
            "--symmetry",
            group,
            "--out",
            path(&file),
            "--format",
            "json",
        ]);
        assert!(out.status.success(), "{group}: {}", stderr(&out));
        let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!((value["surface_area"].as_f64().unwrap() - 6.5467).abs() < 1e-3);
    }
    // Without a seed the tangential embedding has no symmetry to impose.
    let out = polytile(&["optimize", "--type", path(&ty), "--symmetry", "D3h", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
}
