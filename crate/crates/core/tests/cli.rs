//! Black-box tests of the binary: exit codes, JSON shape, DOT structure, and
//! PPM bytes.

use std::collections::BTreeSet;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tnuca"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout should be JSON")
}

#[test]
fn classify_emits_versioned_json() {
    let v = stdout_json(&["classify", "--f", "3", "--g", "15", "--n", "4", "--seq", "A001651"]);
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["inputs"]["sequence"], "A001651");
    assert_eq!(v["verdicts"]["restrictedSurjective"], false);
    assert_eq!(v["verdicts"]["irreversible"], true);
    assert_eq!(v["witnesses"]["nonReachable"], 5);
    assert_eq!(v["commonNonReachable"].as_array().unwrap().len(), 0);
}

#[test]
fn classify_supports_three_states() {
    let v = stdout_json(&[
        "classify", "--f", "1470343891115", "--g", "5594248657947", "--n", "3", "--k", "3",
        "--seq", "A001651",
    ]);
    assert_eq!(v["verdicts"]["reversible"], true);
    assert_eq!(v["inputs"]["k"], 3);
}

#[test]
fn oversized_lattice_exits_with_budget_code() {
    let out = run(&["classify", "--f", "3", "--g", "15", "--n", "25", "--seq", "A005408"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn aperiodic_cycles_without_horizon_is_a_usage_error() {
    let out = run(&["cycles", "--f", "3", "--g", "15", "--n", "4", "--seq", "A018252", "--init", "9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("horizon"));
}

#[test]
fn aperiodic_cycles_with_horizon_is_inexact() {
    let v = stdout_json(&[
        "cycles", "--f", "3", "--g", "15", "--n", "4", "--seq", "A018252", "--init", "9",
        "--horizon", "50",
    ]);
    assert_eq!(v["exact"], false);
    assert!(v["cycleLength"].is_null());
}

#[test]
fn missing_arguments_exit_one_and_help_exits_zero() {
    assert_eq!(run(&["classify", "--f", "3"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("classify"));
    assert_eq!(run(&["classify", "--help"]).status.code(), Some(0));
}

#[test]
fn partial_diagram_mode_requires_a_sequence() {
    let out = run(&["diagram", "--f", "7", "--g", "40", "--n", "4", "--mode", "partial"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cycles_reports_the_pinned_statuses() {
    let v = stdout_json(&[
        "cycles", "--f", "3", "--g", "15", "--n", "4", "--seq", "A001651", "--init", "9",
        "--target", "2",
    ]);
    assert_eq!(v["records"][0]["status"], "RECURRENT");

    let v = stdout_json(&[
        "cycles", "--f", "3", "--g", "15", "--n", "4", "--seq", "A001651", "--init", "4",
        "--target", "2",
    ]);
    assert_eq!(v["records"][0]["status"], "TRANSIENT");

    let v = stdout_json(&[
        "cycles", "--f", "7", "--g", "40", "--n", "4", "--seq", "A001651", "--init", "5",
        "--target", "10",
    ]);
    let r = &v["records"][0];
    assert_eq!(r["block"], serde_json::json!([1, 1, 4]));
    assert_eq!(r["cycleLength"], 6);
    assert_eq!(r["preperiod"], serde_json::json!([]));
}

#[test]
fn cycles_target_outside_the_trajectory_is_not_visited() {
    let v = stdout_json(&[
        "cycles", "--f", "7", "--g", "40", "--n", "4", "--seq", "A001651", "--init", "5",
        "--target", "3",
    ]);
    assert_eq!(v["records"][0]["status"], "NOT_VISITED");
}

/// Pulls (from, to, color) triples out of DOT edge lines.
fn dot_edges(dot: &str) -> Vec<(u64, u64, String)> {
    dot.lines()
        .filter(|l| l.contains("->"))
        .map(|l| {
            let mut quoted = l.split('"').skip(1).step_by(2);
            let from = quoted.next().unwrap().parse().unwrap();
            let to = quoted.next().unwrap().parse().unwrap();
            let color = quoted.next().unwrap().to_string();
            (from, to, color)
        })
        .collect()
}

fn dot_plain_nodes(dot: &str) -> BTreeSet<u64> {
    dot.lines()
        .filter(|l| !l.contains("->") && l.trim_end().ends_with("\";"))
        .map(|l| l.split('"').nth(1).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn combined_diagram_dot_round_trips() {
    let out = run(&["diagram", "--f", "170", "--g", "85", "--n", "4", "--mode", "combined"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph transitions {\n"));
    assert!(dot.ends_with("}\n"));

    let edges = dot_edges(&dot);
    assert_eq!(edges.len(), 32);
    let black: Vec<_> = edges.iter().filter(|(_, _, c)| c == "black").collect();
    let blue: Vec<_> = edges.iter().filter(|(_, _, c)| c == "blue").collect();
    assert_eq!((black.len(), blue.len()), (16, 16));

    // each vertex has exactly one outgoing edge per color, matching the maps
    let f = tnuca::GlobalMap::build(&tnuca::LocalRule::eca(170), 4).unwrap();
    let g = tnuca::GlobalMap::build(&tnuca::LocalRule::eca(85), 4).unwrap();
    for (from, to, color) in &edges {
        let expected = if color == "black" { f.image_of(*from) } else { g.image_of(*from) };
        assert_eq!(*to, expected);
    }
    assert_eq!(dot_plain_nodes(&dot).len(), 16);
}

#[test]
fn single_rule_diagram_uses_one_color() {
    let out = run(&["diagram", "--f", "170", "--g", "85", "--n", "3", "--mode", "single-g"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    let edges = dot_edges(&dot);
    assert_eq!(edges.len(), 8);
    assert!(edges.iter().all(|(_, _, c)| c == "blue"));
}

#[test]
fn partial_diagram_dot_marks_roles_and_dedupes() {
    let out = run(&[
        "diagram", "--f", "7", "--g", "40", "--n", "4", "--mode", "partial", "--seq", "A001651",
        "--cin", "auto",
    ]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    let white: Vec<&str> = dot.lines().filter(|l| l.contains("fillcolor=\"white\"")).collect();
    let gray: Vec<&str> = dot.lines().filter(|l| l.contains("fillcolor=\"gray\"")).collect();
    assert_eq!(white.len(), 7);
    assert!(!gray.is_empty());
    let edges = dot_edges(&dot);
    assert_eq!(edges.len(), 19);
    let distinct: BTreeSet<_> = edges.iter().collect();
    assert_eq!(distinct.len(), edges.len());
}

#[test]
fn auto_initial_set_without_a_witness_fails() {
    let out = run(&[
        "diagram", "--f", "0", "--g", "0", "--n", "3", "--mode", "partial", "--seq", "A001651",
        "--cin", "auto",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no initial set"));
}

#[test]
fn spacetime_writes_the_pinned_ppm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("st.ppm");
    let out = run(&[
        "spacetime", "--f", "90", "--g", "73", "--n", "8", "--seq", "pat:110", "--steps", "4",
        "--init", "center", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());

    let data = std::fs::read(&path).unwrap();
    let mut expected = b"P6\n8 5\n255\n".to_vec();
    let rows = ["00001000", "00010100", "00100010", "10001000", "01010101"];
    let colors = [[0u8, 0, 255], [0, 0, 255], [0, 0, 255], [255, 0, 0], [0, 0, 255]];
    for (row, color) in rows.iter().zip(colors) {
        for ch in row.chars() {
            expected.extend_from_slice(if ch == '0' { &[255, 255, 255] } else { &color });
        }
    }
    assert_eq!(data, expected);
}

#[test]
fn spacetime_zero_steps_renders_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("row.ppm");
    let out = run(&[
        "spacetime", "--f", "90", "--g", "73", "--n", "4", "--seq", "A005408", "--steps", "0",
        "--init", "9", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let data = std::fs::read(&path).unwrap();
    assert!(data.starts_with(b"P6\n4 1\n255\n"));
    assert_eq!(data.len(), 11 + 12);
}

#[test]
fn spacetime_seeded_random_initial_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.ppm");
    let b = dir.path().join("b.ppm");
    for path in [&a, &b] {
        let out = run(&[
            "spacetime", "--f", "90", "--g", "30", "--n", "16", "--seq", "A005408", "--steps",
            "8", "--init", "random:42", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn spacetime_scale_multiplies_the_raster() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scaled.ppm");
    let out = run(&[
        "spacetime", "--f", "90", "--g", "73", "--n", "8", "--seq", "pat:110", "--steps", "4",
        "--init", "center", "--out", path.to_str().unwrap(), "--scale", "3",
    ]);
    assert!(out.status.success());
    let data = std::fs::read(&path).unwrap();
    assert!(data.starts_with(b"P6\n24 15\n255\n"));
}

#[test]
fn graph_reports_components_and_circuits() {
    let v = stdout_json(&["graph", "--f", "210", "--g", "51", "--n", "5"]);
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["componentCount"], 2);
    assert_eq!(v["sufficientCondition"], true);
    assert_eq!(v["fullyHamiltonian"], false);
    assert_eq!(v["fullyEulerian"], true);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps[0]["id"], 0);
    assert_eq!(comps[0]["hamiltonian"]["verdict"], "TRUE");
    assert_eq!(comps[1]["hamiltonian"]["verdict"], "FALSE");
    assert_eq!(comps[1]["alternatingEuler"].as_array().unwrap().len(), 60);
}

#[test]
fn graph_budget_zero_leaves_hamiltonicity_open() {
    let v = stdout_json(&["graph", "--f", "15", "--g", "180", "--n", "5", "--hamiltonian-budget", "0"]);
    assert!(v["fullyHamiltonian"].is_null());
    let comps = v["components"].as_array().unwrap();
    assert!(comps.iter().all(|c| c["hamiltonian"]["verdict"] == "UNKNOWN"));
}

#[test]
fn graph_euler_first_flag_flips_the_first_edge() {
    let v = stdout_json(&["graph", "--f", "210", "--g", "51", "--n", "5", "--euler-first", "G"]);
    let first = &v["components"][0]["alternatingEuler"][0];
    assert_eq!(first["rule"], "G");
}

#[test]
fn json_outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["classify", "--f", "229", "--g", "85", "--n", "5", "--seq", "A001651"],
        vec!["graph", "--f", "210", "--g", "51", "--n", "5"],
        vec!["cycles", "--f", "7", "--g", "40", "--n", "4", "--seq", "A001651", "--init", "5"],
        vec!["diagram", "--f", "170", "--g", "85", "--n", "4"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}
