use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("inputs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degmult")).args(args).output().expect("binary runs")
}

/// Runs a subcommand on an input file and returns the `result` object.
fn result(command: &str, file: &str, extra: &[&str]) -> Value {
    let path = input(file);
    let mut args = vec![command, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert!(out.status.success(), "{command} {file}: {}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["command"], command);
    report["result"].clone()
}

#[test]
fn multiplicity_routes_agree_on_generic_matrix() {
    let r = result("multiplicity", "bivia_matrix.json", &[]);
    assert_eq!(r["formula"], "6");
    assert_eq!(r["cayley"], "6");
    assert_eq!(r["oracle"]["value"], "6");
    assert_eq!(r["agree"], true);
    let d = result("multiplicity", "dense_map.json", &[]);
    assert_eq!((&d["formula"], &d["local_degree"], &d["oracle"]["value"]), (&"6".into(), &"6".into(), &"6".into()));
}

#[test]
fn multiplicity_disagreement_flags_degenerate_matrix() {
    let r = result("multiplicity", "homogeneous_degenerate.json", &[]);
    assert_eq!(r["formula"], "3");
    assert_eq!(r["oracle"]["value"], "6");
    assert_eq!(r["agree"], false);
    let only = result("multiplicity", "homogeneous_degenerate.json", &["--method", "oracle"]);
    assert!(only.get("formula").is_none());
}

#[test]
fn failed_route_is_reported_in_band() {
    let r = result("multiplicity", "plane_map.json", &[]);
    assert!(r["formula"]["error"].is_string());
    assert_eq!(r["oracle"]["value"], "6");
    assert_eq!(r["agree"], false);
    let out = run(&["multiplicity", input("plane_map.json").to_str().unwrap(), "--method", "formula"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn multiplicity_of_grid_without_oracle() {
    let r = result("multiplicity", "bivia_grid.json", &[]);
    assert_eq!(r["formula"], "6");
    assert_eq!(r["oracle"], Value::Null);
}

#[test]
fn general_position_verdicts() {
    assert_eq!(result("genpos", "homogeneous_degenerate.json", &[])["verdict"], "NotInGeneralPosition");
    assert_eq!(result("genpos", "bivia_matrix.json", &[])["verdict"], "InGeneralPosition");
    let w = result("genpos", "ray_matrix.json", &["--mode", "witness"]);
    assert_eq!(w["shift_radius"], 3);
    assert_eq!(w["collections"], 13);
}

#[test]
fn mixed_volumes_of_planar_pairs() {
    for (file, mv, normalized) in
        [("pairs_d1_d2.json", "1/2", "1"), ("pairs_d1_d3.json", "1", "2"), ("pairs_d2_d3.json", "3/2", "3")]
    {
        let r = result("mixed-volume", file, &[]);
        assert_eq!(r["mixed_volume"], mv);
        assert_eq!(r["normalized"], normalized);
        assert_eq!(r["agree"], true);
    }
}

#[test]
fn cayley_and_homogeneous_commands() {
    let c = result("cayley-mv", "cayley_grid.json", &[]);
    assert_eq!(c["formula"], c["direct"]);
    assert_eq!(c["agree"], true);
    let h = result("homogeneous", "homogeneous_degrees.json", &[]);
    assert_eq!(h["multiplicity"], "3");
    assert_eq!(h["simplex_formula"], "3");
}

#[test]
fn newton_reports_principal_parts() {
    let r = result("newton", "plane_map.json", &[]);
    assert_eq!(r["newton_polyhedra"][0][0]["generators"], serde_json::json!([[2, 0]]));
}

#[test]
fn lattice_identities() {
    let fail = result("oda", "oda_fail.json", &[]);
    assert_eq!(fail["identity_holds"], false);
    assert_eq!(fail["missing"], serde_json::json!([[1, 1], [2, 2]]));
    assert_eq!(fail["transversal"], false);
    let ok = result("oda", "oda_transversal.json", &[]);
    assert_eq!((&ok["identity_holds"], &ok["transversal"]), (&true.into(), &true.into()));
    let sq = result("minimax", "minimax_square.json", &[]);
    assert_eq!((&sq["envelope"], &sq["vertex_max"], &sq["equal"]), (&"3".into(), &Value::Null, &false.into()));
    assert_eq!(result("minimax", "minimax_simplex.json", &[])["equal"], true);
    let p = result("pieces", "pieces.json", &[]);
    assert_eq!(p["pieces"], 10);
    assert_eq!(p["expected"], "10");
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("degmult-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["multiplicity", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.join("missing.json");
    assert_eq!(run(&["pieces", missing.to_str().unwrap()]).status.code(), Some(2));
    let grid = input("bivia_grid.json");
    assert_eq!(run(&["multiplicity", grid.to_str().unwrap(), "--method", "oracle"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["genpos", "--mode", "witness", "--seed", "7"],
        vec!["multiplicity"],
        vec!["--format", "text", "multiplicity"],
    ] {
        let file = input("ray_matrix.json");
        let mut full = args.clone();
        full.push(file.to_str().unwrap());
        let a = run(&full);
        let b = run(&full);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timing_only_on_request() {
    let file = input("pieces.json");
    let plain: Value = serde_json::from_slice(&run(&["pieces", file.to_str().unwrap()]).stdout).unwrap();
    assert!(plain.get("timing").is_none());
    let timed: Value = serde_json::from_slice(&run(&["--timing", "pieces", file.to_str().unwrap()]).stdout).unwrap();
    assert!(timed["timing"]["elapsed_us"].is_string());
}

#[test]
fn text_format_lists_result_fields() {
    let out = run(&["--format", "text", "homogeneous", input("homogeneous_degrees.json").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: homogeneous\n"));
    assert!(text.lines().any(|l| l == "multiplicity: 3"));
}
