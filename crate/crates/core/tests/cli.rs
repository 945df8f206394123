use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn deltak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltak")).args(args).env_remove("DELTAK_CAP").output().expect("run deltak")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn em_reports_a_single_homotopy_group() {
    let out = deltak(&["em", "--group", "Z/2", "--m", "2", "--L", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let groups: Vec<Value> = v["homotopy"].as_array().unwrap().clone();
    assert_eq!(groups.len(), 5);
    for (n, g) in groups.iter().enumerate() {
        assert_eq!(g, &if n == 2 { serde_json::json!([2]) } else { serde_json::json!([]) });
    }
    let v = json_of(&deltak(&["em", "--group", "Z", "--m", "1", "--L", "4"]));
    assert_eq!(v["homotopy"], serde_json::json!([[], [0], [], []]));
}

#[test]
fn em_rejects_shallow_truncations_and_bad_groups() {
    assert_eq!(deltak(&["em", "--group", "Z", "--m", "3", "--L", "3"]).status.code(), Some(3));
    assert_eq!(deltak(&["em", "--group", "Q", "--m", "1", "--L", "3"]).status.code(), Some(2));
    assert_eq!(deltak(&["em", "--group", "Z"]).status.code(), Some(2));
}

#[test]
fn k0_ranks_and_matrix_dump() {
    let v = json_of(&deltak(&["k0", "--m", "1", "--n", "3"]));
    assert_eq!((v["rank"].as_u64(), v["torsion"].as_array().unwrap().len(), v["lattices_agree"].as_bool()), (Some(3), 0, Some(true)));
    assert_eq!(json_of(&deltak(&["k0", "--m", "2", "--n", "4"]))["rank"], 6);
    assert_eq!(json_of(&deltak(&["k0", "--m", "2", "--n", "1"]))["rank"], 0);
    let dir = tempfile::tempdir().unwrap();
    let out = deltak(&["k0", "--m", "2", "--n", "3", "--dump-matrix", "--out", p(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    let euler = std::fs::read_to_string(dir.path().join("k0_2_3_euler.txt")).unwrap();
    assert!(euler.starts_with("# columns: 0,0,0 0,0,1"));
    assert!(dir.path().join("k0_2_3_ar.txt").exists());
}

#[test]
fn dk_check_passes() {
    let out = deltak(&["dk-check", "--group", "Z/4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!((v["array_model"].as_bool(), v["hom_k0"].as_bool()), (Some(true), Some(true)));
    assert_eq!(deltak(&["dk-check", "--group", "Z", "--m", "2", "--L", "4"]).status.code(), Some(0));
}

#[test]
fn slices_write_orbit_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = deltak(&["slices", "--m", "1", "--n", "3", "--out", p(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("4 nodes"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("orbit_1_3.json")).unwrap()).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(v["partial"], false);
    assert!(std::fs::read_to_string(dir.path().join("orbit_1_3.dot")).unwrap().starts_with("digraph"));

    let out = deltak(&["slices", "--m", "2", "--n", "2", "--out", p(dir.path())]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("1 nodes, 0 edges"));

    let out = deltak(&["slices", "--m", "2", "--n", "4", "--cap", "10", "--out", p(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    let out = deltak(&["slices", "--m", "2", "--n", "4", "--cap", "2", "--out", p(dir.path())]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("orbit_2_4.json")).unwrap()).unwrap();
    assert_eq!(v["partial"], true);

    let capped = Command::new(env!("CARGO_BIN_EXE_deltak"))
        .args(["slices", "--m", "1", "--n", "4", "--out", p(dir.path())])
        .env("DELTAK_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(4));
}

#[test]
fn knit_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let knitted = dir.path().join("knitted.json");
    let out = deltak(&["knit", p(&fixture("cone_identity.json")), "--out", p(&knitted)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["betti"]["1,2"], serde_json::json!({}));
    assert_eq!(v["betti"]["0,1"], serde_json::json!({"0": 1}));

    let out = deltak(&["check", p(&knitted)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["passes"], true);

    let again = dir.path().join("again.json");
    deltak(&["knit", p(&fixture("cone_identity.json")), "--out", p(&again)]);
    assert_eq!(std::fs::read(&knitted).unwrap(), std::fs::read(&again).unwrap());

    let out = deltak(&["knit", p(&fixture("three_column.json"))]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_lists_failing_cubes_and_rejects_non_functors() {
    let dir = tempfile::tempdir().unwrap();
    let knitted = dir.path().join("knitted.json");
    deltak(&["knit", p(&fixture("cone_identity.json")), "--out", p(&knitted)]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&knitted).unwrap()).unwrap();

    let mut corrupted = v.clone();
    corrupted["arrows"]["0,1->0,2"] = serde_json::json!({"0": [["0"]]});
    for arrow in ["0,1->1,1", "0,2->1,2"] {
        corrupted["arrows"].as_object_mut().unwrap().remove(arrow);
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, corrupted.to_string()).unwrap();
    let out = deltak(&["check", p(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    assert_eq!(report["report"]["euler_failures"], serde_json::json!(["0,1,2"]));
    assert_eq!(report["report"]["ar_failures"], serde_json::json!(["0,1"]));

    v["arrows"]["0,1->0,2"] = serde_json::json!({"0": [["3"]]});
    let nf = dir.path().join("nf.json");
    std::fs::write(&nf, v.to_string()).unwrap();
    let out = deltak(&["check", p(&nf)]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0,1) -> {(0,2), (1,1)} -> (1,2)"));

    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"m\": 1}").unwrap();
    assert_eq!(deltak(&["check", p(&junk)]).status.code(), Some(2));
    std::fs::write(&junk, "not json").unwrap();
    assert_eq!(deltak(&["knit", p(&junk)]).status.code(), Some(2));
}

#[test]
fn verify_quick_passes_and_names_a_seeded_failure() {
    let out = deltak(&["verify", "--profile", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 10);

    let out = deltak(&["verify", "--profile", "quick", "--seed-fault", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    let failed: Vec<&str> =
        v["criteria"].as_array().unwrap().iter().filter(|c| c["passed"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failed, vec!["AR relations generate Euler relations"]);
}

#[test]
fn hasse_prints_dot() {
    let out = deltak(&["hasse", "--m", "1", "--n", "2"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph delta_1_2"));
    assert!(dot.contains("\"0,1\" -> \"0,2\""));
}
