use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use troplat_core::entropy::entropy_vector;
use troplat_core::io::{to_json_string, ComplexDocument, MatrixDocument};
use troplat_core::polyhedral::complex::sigma_complex;
use troplat_core::Fixture;

fn troplat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_troplat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_matrix(dir: &Path, f: Fixture) -> String {
    let path = dir.join(format!("{f}.json"));
    let doc = MatrixDocument::from_matrix(&f.matrix(), Some(f.name().into()));
    std::fs::write(&path, to_json_string(&doc, Some(2))).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn staircase_entropy_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_matrix(dir.path(), Fixture::Staircase);
    let v = json(&troplat(&["entropy", "-i", &path]));
    assert_eq!(v["h"]["123"], "inf");
    assert_eq!(v["h"]["13"], "2");
}

#[test]
fn planar_membership_and_sigma() {
    let v = json(&troplat(&["member", "--example", "planar", "--point", "0,1"]));
    assert_eq!(v["member"], true);
    let v = json(&troplat(&["member", "--example", "planar", "--point", "0,0"]));
    assert_eq!(v["member"], false);
    let v = json(&troplat(&["complex", "--example", "planar", "--sigma-only"]));
    assert_eq!(v["cells"].as_array().unwrap().len(), 6);
}

#[test]
fn complex_output_round_trips() {
    let out = troplat(&["complex", "--example", "skew", "--vrep", "--json-indent", "2"]);
    let doc: ComplexDocument = serde_json::from_slice(&out.stdout).unwrap();
    let want = sigma_complex(&entropy_vector(&Fixture::Skew.matrix()).unwrap()).unwrap();
    assert_eq!(doc.to_complex().unwrap(), want);
}

#[test]
fn seeded_commands_are_byte_identical() {
    for args in [
        &["sample", "--example", "cubic", "--trials", "50", "--seed", "3"][..],
        &["ff-survival", "--example", "planar", "--trials", "500", "--seed", "4"],
        &["amoeba", "--example", "corner", "--trials", "50", "--seed", "5"],
        &["measure", "--example", "staircase", "--trials", "200", "--seed", "6"],
    ] {
        let (a, b) = (troplat(args), troplat(args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_file_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.json");
    let out = troplat(&["export-plot", "--example", "planar", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let vertices: Vec<&Value> = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["dim"] == 0)
        .map(|c| &c["vertices"][0])
        .collect();
    assert_eq!(vertices, [&serde_json::json!(["0", "1"]), &serde_json::json!(["2", "3"])]);
}

#[test]
fn skew_plot_matches_the_maximal_cell_profile() {
    let v = json(&troplat(&["export-plot", "--example", "skew", "--sigma-only"]));
    let cells = v["cells"].as_array().unwrap();
    let two_cells = cells.iter().filter(|c| c["dim"] == 2).count();
    assert_eq!(two_cells, 3);
    assert!(cells.iter().filter(|c| c["dim"] == 2).all(|c| !c["rays"].as_array().unwrap().is_empty()));
}

#[test]
fn exit_codes_and_error_payloads() {
    let out = troplat(&["ff-survival", "--example", "staircase", "--point", "5,0,0", "--trunc", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "truncation_too_small");

    let out = troplat(&["reconstruct", "--example", "planar", "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "not_member");

    let out = troplat(&["export-plot", "-i", "/nonexistent/matrix.json"]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(troplat(&["entropy", "--example", "nope"]).status.code(), Some(2));
    assert_eq!(troplat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(troplat(&[]).status.code(), Some(2));
}

#[test]
fn malformed_documents_are_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n": 2, "r": 1, "rows": [["1", "t^"]]}"#).unwrap();
    let out = troplat(&["entropy", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::write(&path, "not json").unwrap();
    let out = troplat(&["entropy", "-i", path.to_str().unwrap()]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "invalid_document");
}
