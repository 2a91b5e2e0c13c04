//! Process-level checks: spec'd example invocations, byte determinism,
//! error JSON on stderr with exit 1, output routing, and OFF export.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn geomnum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geomnum"))
        .args(args)
        .env_remove("GEOMNUM_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_error(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let text = String::from_utf8_lossy(&out.stderr);
    assert_eq!(text.lines().count(), 1, "single-line error: {text}");
    serde_json::from_str(&text).expect("stderr is JSON")
}

const SQUARE: &str = "[[0,0],[1,0],[0,1],[1,1]]";

#[test]
fn covering_radius_of_the_square_lattice() {
    let out = geomnum(&["lattice", "covering-radius", "--gram", "[[1,0],[0,1]]"]);
    let v = stdout_json(&out);
    assert_eq!(v["radius_squared"], Value::String("1/2".into()));
}

#[test]
fn parallelohedron_bound_in_three_dimensions() {
    let v = stdout_json(&geomnum(&["bounds", "--d", "3", "--h", "1"]));
    assert_eq!(v["bound"], 14);
    assert_eq!(v["facet_count"], Value::Null);

    let v = stdout_json(&geomnum(&["bounds", "--d", "3", "--h", "2"]));
    assert_eq!(v["bound"], 22);
}

#[test]
fn thue_showcase_equation() {
    let out = geomnum(&[
        "cubic", "thue", "--a", "0", "--b", "-1", "--c", "1", "--bound", "1000",
    ]);
    let v = stdout_json(&out);
    let sols: Vec<(i64, i64)> = v["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_i64().unwrap(), p[1].as_i64().unwrap()))
        .collect();
    assert_eq!(sols, [(-1, 1), (0, 1), (1, 0), (1, 1), (4, -3)]);
    assert_eq!(v["method"], "bounded_search");
    assert_eq!(v["cap_audit"], true);
}

#[test]
fn identical_runs_are_byte_identical() {
    let a = geomnum(&["triangulate", "--points", SQUARE]);
    let b = geomnum(&["triangulate", "--points", SQUARE]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let args = [
        "lattice", "optimize", "--dim", "2", "--seed", "7", "--budget", "500",
    ];
    let a = geomnum(&args);
    let b = geomnum(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn domain_errors_are_machine_readable() {
    // 8 is a cube, so there is no cubic ring to search.
    let v = stderr_error(&geomnum(&["cubic", "pell", "--q", "8"]));
    assert_eq!(v["error"]["code"], "cubic");
    assert!(v["error"]["message"].as_str().unwrap().contains("cube"));

    let v = stderr_error(&geomnum(&[
        "lattice",
        "covering-radius",
        "--gram",
        "[[0,0],[0,0]]",
    ]));
    assert_eq!(v["error"]["code"], "lattice");
}

#[test]
fn unknown_flags_are_usage_errors() {
    let v = stderr_error(&geomnum(&["bounds", "--d", "3", "--h", "1", "--frobnicate"]));
    assert_eq!(v["error"]["code"], "usage");

    let v = stderr_error(&geomnum(&["lattice", "covering-radius"]));
    assert_eq!(v["error"]["code"], "usage");
}

#[test]
fn help_and_version_exit_zero() {
    let out = geomnum(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("triangulate"));

    let out = geomnum(&["--version"]);
    assert!(out.status.success());
}

#[test]
fn output_lands_in_the_requested_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tiling.json");
    let out = geomnum(&[
        "triangulate",
        "--points",
        SQUARE,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let direct = geomnum(&["triangulate", "--points", SQUARE]);
    assert_eq!(text.as_bytes(), &direct.stdout[..]);
}

#[test]
fn relative_outputs_respect_the_out_dir_variable() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_geomnum"))
        .args(["bounds", "--d", "2", "--h", "1", "--out", "bound.json"])
        .env("GEOMNUM_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("bound.json")).unwrap())
            .unwrap();
    assert_eq!(v["bound"], 6);
}

#[test]
fn file_inputs_work_like_inline_json() {
    let dir = tempfile::tempdir().unwrap();
    let gram = dir.path().join("gram.json");
    std::fs::write(&gram, "[[1,0],[0,1]]").unwrap();
    let from_file = stdout_json(&geomnum(&[
        "lattice",
        "covering-density",
        "--gram",
        gram.to_str().unwrap(),
    ]));
    let inline = stdout_json(&geomnum(&[
        "lattice",
        "covering-density",
        "--gram",
        "[[1,0],[0,1]]",
    ]));
    assert_eq!(from_file, inline);
}

#[test]
fn tilings_survive_the_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = geomnum(&[
        "triangulate",
        "--points",
        "[[0,0],[9,1],[3,7],[5,2],[8,8],[1,4]]",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&geomnum(&["verify", "--tiling", path.to_str().unwrap()]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["violations"], Value::Array(vec![]));
}

#[test]
fn square_tiling_exports_as_off() {
    let out = geomnum(&["triangulate", "--points", SQUARE, "--format", "off"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "OFF\n4 1 0\n0.0 0.0 0.0\n0.0 1.0 0.0\n1.0 0.0 0.0\n1.0 1.0 0.0\n4 0 2 3 1\n"
    );
}

#[test]
fn off_is_rejected_where_it_has_no_meaning() {
    let v = stderr_error(&geomnum(&[
        "cubic", "pell", "--q", "2", "--format", "off",
    ]));
    assert_eq!(v["error"]["code"], "usage");
}

#[test]
fn verify_reports_a_tampered_tiling() {
    let made = geomnum(&["triangulate", "--points", SQUARE]);
    let mut v: Value = serde_json::from_slice(&made.stdout).unwrap();
    // Claim a triangle instead of the true quadrilateral cell.
    v["cells"][0]["vertex_indices"] = serde_json::json!([0, 1, 2]);
    let tampered = v.to_string();
    let checked = stdout_json(&geomnum(&["verify", "--tiling", &tampered]));
    assert_eq!(checked["valid"], false);
    assert!(!checked["violations"].as_array().unwrap().is_empty());
}

#[test]
fn grow_reports_the_surrounding_cell() {
    let v = stdout_json(&geomnum(&[
        "grow", "--points", SQUARE, "--at", "[\"1/3\",\"1/2\"]",
    ]));
    assert_eq!(v["solid"]["sphere"]["radius_squared"], "1/2");
    assert_eq!(v["solid"]["vertex_indices"].as_array().unwrap().len(), 4);
}

#[test]
fn validate_rset_flags_both_threshold_failures() {
    // 5x5 integer grid; eroding [0,4]^2 by 1 keeps deep holes like
    // (3/2, 3/2) inside the checked region.
    let points: Vec<Vec<i64>> = (0..5)
        .flat_map(|x| (0..5).map(move |y| vec![x, y]))
        .collect();
    let points = serde_json::to_string(&points).unwrap();
    let window = "[[0,0],[4,4]]";
    let pass = stdout_json(&geomnum(&[
        "validate-rset",
        "--points",
        &points,
        "--r",
        "1/2",
        "--R2",
        "1/2",
        "--margin",
        "1",
        "--window",
        window,
    ]));
    assert_eq!(pass["packing_ok"], true);
    assert_eq!(pass["covering_ok"], true);

    let fail = stdout_json(&geomnum(&[
        "validate-rset",
        "--points",
        &points,
        "--r",
        "51/100",
        "--R2",
        "49/100",
        "--margin",
        "1",
        "--window",
        window,
    ]));
    assert_eq!(fail["packing_ok"], false);
    assert_eq!(fail["covering_ok"], false);
}
