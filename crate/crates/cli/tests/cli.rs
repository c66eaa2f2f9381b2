//! End-to-end tests for the `listplane` binary: exit-code contract,
//! byte-stable text output on the shipped examples, and error reporting.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_listplane"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn exit(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn reduce_s1_catalog_golden_output() {
    let output = run(&["reduce", "--catalog", "S1"]);
    assert_eq!(exit(&output), 0);
    assert_eq!(
        stdout(&output),
        "name: S1\n\
         caps: [1,2,1,1,1]\n\
         status: reducible\n\
         witness count: 1\n\
         valid expansion: [1,2,1,1,1]\n"
    );
}

#[test]
fn reduce_s1_file_matches_catalog() {
    let from_catalog = run(&["reduce", "--catalog", "S1"]);
    let from_file = run(&["reduce", data("s1.config").to_str().unwrap()]);
    assert_eq!(exit(&from_file), 0);
    assert_eq!(stdout(&from_file), stdout(&from_catalog));
}

#[test]
fn reduce_quiet_prints_only_verdict_lines() {
    let output = run(&["--quiet", "reduce", "--catalog", "S1"]);
    assert_eq!(exit(&output), 0);
    assert_eq!(
        stdout(&output),
        "status: reducible\nwitness count: 1\nvalid expansion: [1,2,1,1,1]\n"
    );
}

#[test]
fn reduce_flip_negates_but_preserves_witness() {
    // Flipping one edge negates every coefficient; the witness set is unchanged.
    let output = run(&["--quiet", "reduce", "--catalog", "S1", "--flip", "0"]);
    assert_eq!(exit(&output), 0);
    assert_eq!(
        stdout(&output),
        "status: reducible\nwitness count: 1\nvalid expansion: [1,2,1,1,1]\n"
    );
}

#[test]
fn reduce_flip_out_of_range_is_an_error() {
    let output = run(&["reduce", "--catalog", "S1", "--flip", "6"]);
    assert_eq!(exit(&output), 2);
    assert!(stderr(&output).contains("--flip 6"));
}

#[test]
fn reduce_json_structure() {
    let output = run(&["--format", "json", "reduce", "--catalog", "S1"]);
    assert_eq!(exit(&output), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid json");
    assert_eq!(value["name"], "S1");
    assert_eq!(value["status"], "reducible");
    assert_eq!(value["count"], 1);
    assert_eq!(value["caps"], serde_json::json!([1, 2, 1, 1, 1]));
    assert_eq!(value["witnesses"], serde_json::json!([[1, 2, 1, 1, 1]]));
}

#[test]
fn reduce_tight_triangle_is_inconclusive() {
    let output = run(&["reduce", data("triangle-tight.config").to_str().unwrap()]);
    assert_eq!(exit(&output), 1);
    assert!(stdout(&output).contains("status: inconclusive"));
    assert!(stdout(&output).contains("witness count: 0"));
}

#[test]
fn reduce_loose_triangle_is_reducible() {
    let output = run(&["--quiet", "reduce", data("triangle-loose.config").to_str().unwrap()]);
    assert_eq!(exit(&output), 0);
    assert_eq!(
        stdout(&output),
        "status: reducible\n\
         witness count: 2\n\
         valid expansion: [2,0,1]\n\
         valid expansion: [2,1,0]\n"
    );
}

#[test]
fn reduce_without_source_is_an_error() {
    let output = run(&["reduce"]);
    assert_eq!(exit(&output), 2);
    assert!(stderr(&output).contains("--catalog"));
}

#[test]
fn reduce_unknown_catalog_entry_is_an_error() {
    let output = run(&["reduce", "--catalog", "S99"]);
    assert_eq!(exit(&output), 2);
    assert!(stderr(&output).contains("S99"));
}

#[test]
fn reduce_malformed_file_reports_line_number() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "name broken").unwrap();
    writeln!(file, "k 4").unwrap();
    writeln!(file, "vertices two").unwrap();
    let output = run(&["reduce", file.path().to_str().unwrap()]);
    assert_eq!(exit(&output), 2);
    assert!(stderr(&output).contains("line 3"), "stderr: {}", stderr(&output));
}

#[test]
fn oracle_loose_triangle_exhaustive_is_choosable() {
    let path = data("triangle-loose.config");
    let output = run(&["oracle", path.to_str().unwrap(), "--exhaustive"]);
    assert_eq!(exit(&output), 0);
    assert_eq!(
        stdout(&output),
        "name: triangle-loose\n\
         sizes: [3,2,2]\n\
         mode: exhaustive\n\
         verdict: choosable\n"
    );
}

#[test]
fn oracle_exhaustive_enforces_the_size_budget() {
    // S1 sizes sum to 11, above the exhaustive budget of 8.
    let output = run(&["oracle", "--catalog", "S1", "--exhaustive"]);
    assert_eq!(exit(&output), 2);
    assert!(stderr(&output).contains("budget"), "stderr: {}", stderr(&output));
}

#[test]
fn oracle_s1_sampled_finds_no_counterexample() {
    let output = run(&["--quiet", "oracle", "--catalog", "S1", "--trials", "200"]);
    assert_eq!(exit(&output), 0);
    assert_eq!(stdout(&output), "verdict: no counterexample found\n");
}

#[test]
fn oracle_sampled_is_deterministic_for_a_fixed_seed() {
    let first = run(&["oracle", "--catalog", "S1", "--trials", "50", "--seed", "7"]);
    let second = run(&["oracle", "--catalog", "S1", "--trials", "50", "--seed", "7"]);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(exit(&first), exit(&second));
}

#[test]
fn oracle_k2_exhaustive_finds_counterexample() {
    // Caps (0,0) give both endpoints a single-color list; equal lists fail.
    let output = run(&["oracle", data("k2.config").to_str().unwrap(), "--exhaustive"]);
    assert_eq!(exit(&output), 1);
    let text = stdout(&output);
    assert!(text.contains("verdict: not choosable"), "stdout: {}", text);
    assert!(text.contains("list 0: 0\n"), "stdout: {}", text);
    assert!(text.contains("list 1: 0\n"), "stdout: {}", text);
}

#[test]
fn oracle_without_mode_is_an_error() {
    let output = run(&["oracle", "--catalog", "S1"]);
    assert_eq!(exit(&output), 2);
    assert!(stderr(&output).contains("--exhaustive"));
}

#[test]
fn discharge_icosahedron_spreads_charge_to_triangles() {
    // Every vertex sends 2/3 to each of its five triangles, landing at -1/3;
    // the final state is negative and the run exits 1. The chords of the
    // triangulation form 4-cycles at distance 0, so the hypothesis fails too.
    let output = run(&[
        "--quiet",
        "discharge",
        data("icosahedron.plane").to_str().unwrap(),
    ]);
    assert_eq!(exit(&output), 1);
    assert_eq!(
        stdout(&output),
        "vertices: 12 faces: 20\n\
         hypothesis (distance 5): violated by [0, 1, 2, 3] and [0, 1, 5, 4] at distance 0\n\
         stage totals: ch0=-4 ch1=-4 ch2=-4\n\
         negative ch2: v0 v1 v2 v3 v4 v5 v6 v7 v8 v9 v10 v11\n"
    );
}

#[test]
fn discharge_cube_golden_output() {
    // Every face of the cube is a 4-face; no rule fires, so all six faces
    // keep their initial charge of -2 and the run ends negative.
    let output = run(&["--quiet", "discharge", data("q3.plane").to_str().unwrap()]);
    assert_eq!(exit(&output), 1);
    assert_eq!(
        stdout(&output),
        "vertices: 8 faces: 6\n\
         hypothesis (distance 5): violated by [0, 1, 3, 2] and [0, 1, 5, 4] at distance 0\n\
         stage totals: ch0=-4 ch1=-4 ch2=-4\n\
         negative ch2: f0 f1 f2 f3 f4 f5\n"
    );
}

#[test]
fn discharge_stage_0_reports_initial_charges_only() {
    let output = run(&[
        "--quiet",
        "discharge",
        data("icosahedron.plane").to_str().unwrap(),
        "--stage",
        "0",
    ]);
    // Each vertex starts at 5 - 2 = 3 and each face at -2, so stage 0 is
    // negative even though the full run is not.
    assert_eq!(exit(&output), 1);
    let text = stdout(&output);
    assert!(text.contains("stage totals: ch0=-4\n"), "stdout: {}", text);
    assert!(text.contains("negative ch0:"), "stdout: {}", text);
}

#[test]
fn discharge_json_uses_explicit_rationals() {
    let output = run(&[
        "--format",
        "json",
        "discharge",
        data("icosahedron.plane").to_str().unwrap(),
    ]);
    assert_eq!(exit(&output), 1);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid json");
    assert_eq!(value["vertices"], 12);
    assert_eq!(value["faces"].as_array().unwrap().len(), 20);
    assert_eq!(value["hypothesis_satisfied"], false);
    assert_eq!(value["ch0"]["total"], "-4/1");
    assert_eq!(value["ch1"]["vertices"][0], "-1/3");
    assert_eq!(value["ch1"]["faces"][0], "0/1");
    assert_eq!(value["round1_ledger"].as_array().unwrap().len(), 60);
    assert_eq!(value["round2_ledger"].as_array().unwrap().len(), 0);
    assert_eq!(value["negative_final"].as_array().unwrap().len(), 12);
}

#[test]
fn discharge_missing_file_is_an_error() {
    let output = run(&["discharge", "/nonexistent/g.plane"]);
    assert_eq!(exit(&output), 2);
    assert!(stderr(&output).contains("/nonexistent/g.plane"));
}

#[test]
fn discharge_invalid_rotation_is_an_error() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "vertices 2").unwrap();
    writeln!(file, "rotation 0: 1").unwrap();
    writeln!(file, "rotation 1:").unwrap();
    let output = run(&["discharge", file.path().to_str().unwrap()]);
    assert_eq!(exit(&output), 2);
}

#[test]
fn validate_separated_cycles_pass() {
    let output = run(&["validate", data("two-c4-path5.graph").to_str().unwrap()]);
    assert_eq!(exit(&output), 0);
    assert_eq!(
        stdout(&output),
        "4-cycles: 2\n\
         minimum pairwise distance: 5\n\
         hypothesis (distance 5): satisfied\n"
    );
}

#[test]
fn validate_k4_fails_at_distance_5_but_passes_at_0() {
    let path = data("k4.graph");
    let at_default = run(&["--quiet", "validate", path.to_str().unwrap()]);
    assert_eq!(exit(&at_default), 1);
    assert!(stdout(&at_default).contains("violated"));
    let at_zero = run(&["--quiet", "validate", path.to_str().unwrap(), "--distance", "0"]);
    assert_eq!(exit(&at_zero), 0);
}

#[test]
fn validate_json_reports_distance() {
    let output = run(&[
        "--format",
        "json",
        "validate",
        data("two-c4-path5.graph").to_str().unwrap(),
    ]);
    assert_eq!(exit(&output), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid json");
    assert_eq!(value["four_cycles"], 2);
    assert_eq!(value["min_pairwise_distance"], 5);
    assert_eq!(value["satisfied"], true);
}

#[test]
fn catalog_list_names_s1() {
    let output = run(&["--quiet", "catalog", "--list"]);
    assert_eq!(exit(&output), 0);
    assert_eq!(stdout(&output), "S1\n");
}

#[test]
fn catalog_check_all_passes() {
    let output = run(&["catalog", "--check-all"]);
    assert_eq!(exit(&output), 0);
    assert!(stdout(&output).contains("S1: reducible, cross-check passed"));
}

#[test]
fn shipped_files_round_trip_through_the_parsers() {
    for name in ["s1.config", "triangle-loose.config", "k2.config"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let config = listplane::io::parse_configuration(&text).unwrap();
        let canonical = listplane::io::serialize_configuration(&config);
        let reparsed = listplane::io::parse_configuration(&canonical).unwrap();
        assert_eq!(
            canonical,
            listplane::io::serialize_configuration(&reparsed),
            "{} round trip",
            name
        );
    }
    for name in ["q3.plane", "icosahedron.plane"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let pg = listplane::io::parse_plane_graph(&text).unwrap();
        let canonical = listplane::io::serialize_plane_graph(&pg);
        let reparsed = listplane::io::parse_plane_graph(&canonical).unwrap();
        assert_eq!(
            canonical,
            listplane::io::serialize_plane_graph(&reparsed),
            "{} round trip",
            name
        );
    }
    for name in ["k4.graph", "two-c4-path5.graph"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let g = listplane::io::parse_graph(&text).unwrap();
        let canonical = listplane::io::serialize_graph(&g);
        let reparsed = listplane::io::parse_graph(&canonical).unwrap();
        assert_eq!(
            canonical,
            listplane::io::serialize_graph(&reparsed),
            "{} round trip",
            name
        );
    }
}
