use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hyperfield"));
    c.env_remove("HYPERFIELD_CONFIG");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_defs(dir: &Path) {
    let zq = run(dir, &["--format", "definition", "zq", "2", "1/3"]);
    assert_eq!(zq.status.code(), Some(0));
    std::fs::write(dir.join("zq.json"), &zq.stdout).unwrap();
    let z4 = run(dir, &["--format", "definition", "cyclic", "4"]);
    std::fs::write(dir.join("z4.json"), &z4.stdout).unwrap();
}

fn write_field(dir: &Path, name: &str, sheet1: &str) {
    let text = format!(
        r#"{{"base":"zq.json","target":"z4.json","assignment":{{"l0":["0"],"l1":[{sheet1}]}}}}"#
    );
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn definition_round_trip_validates() {
    let dir = tempfile::tempdir().unwrap();
    write_defs(dir.path());
    let o = run(dir.path(), &["validate", "zq.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS axioms"));
}

#[test]
fn broken_constants_fail_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    write_defs(dir.path());
    let text = std::fs::read_to_string(dir.path().join("zq.json")).unwrap();
    std::fs::write(dir.path().join("bad.json"), text.replace("\"1/3\"", "\"3/2\"")).unwrap();
    let o = run(dir.path(), &["validate", "bad.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL axioms"));
    assert!(stderr(&o).contains("failed: axioms"));
}

#[test]
fn missing_identity_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    write_defs(dir.path());
    let text = std::fs::read_to_string(dir.path().join("zq.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().remove("identity");
    std::fs::write(dir.path().join("noid.json"), v.to_string()).unwrap();
    let o = run(dir.path(), &["validate", "noid.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("identity"));
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("x.json"), "{\n  \"elements\": [\n").unwrap();
    let o = run(dir.path(), &["validate", "x.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"));
}

#[test]
fn hyperfield_build_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    write_defs(dir.path());
    write_field(dir.path(), "f.json", r#""0","2""#);
    let o = run(dir.path(), &["--out", "out", "hyperfield-build", "f.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    for f in ["report.txt", "definition.json", "sheet_map.json"] {
        assert!(dir.path().join("out").join(f).exists(), "{f}");
    }
    let map: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/sheet_map.json")).unwrap()).unwrap();
    assert_eq!(map.as_array().unwrap().len(), 6);
    assert_eq!(map[0]["element"], "0@l0");

    // the written definition is itself a valid hypergroup file
    let v = run(dir.path(), &["validate", "out/definition.json"]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn exact_sequence_and_duality() {
    let dir = tempfile::tempdir().unwrap();
    write_defs(dir.path());
    write_field(dir.path(), "f.json", r#""0","2""#);
    let o = run(dir.path(), &["exact-seq", "f.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS isomorphism K/H = L"));
    let o = run(dir.path(), &["verify-duality", "f.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS structure constants agree"));
}

#[test]
fn degenerate_fields_report_join_and_product() {
    let dir = tempfile::tempdir().unwrap();
    write_defs(dir.path());
    write_field(dir.path(), "j.json", r#""0","1","2","3""#);
    write_field(dir.path(), "p.json", r#""0""#);
    let o = run(dir.path(), &["verify-duality", "j.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS join case"));
    let o = run(dir.path(), &["verify-duality", "p.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS product case"));
}

#[test]
fn bad_assignment_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    write_defs(dir.path());
    // {0,1} is not a subgroup of Z4
    write_field(dir.path(), "f.json", r#""0","1""#);
    let o = run(dir.path(), &["hyperfield-validate", "f.json"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn config_env_var() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ok.json"), r#"{"seed": 3}"#).unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"sed": 3}"#).unwrap();
    let o = bin().current_dir(dir.path()).env("HYPERFIELD_CONFIG", "ok.json").args(["characters", "Z3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = bin().current_dir(dir.path()).env("HYPERFIELD_CONFIG", "bad.json").args(["characters", "Z3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sed"));
}

#[test]
fn character_table_format() {
    let o = bin().args(["characters", "Z4"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("haar: 0.250000000000 0.250000000000 0.250000000000 0.250000000000"));
    assert!(s.contains("chi1 dual_weight=1.00000000000: (1.00000000000, 0) (0, 1.00000000000)"));
}

#[test]
fn induction_commands_on_z6() {
    for cmd in ["induce", "two-sheet", "verify-52", "verify-53", "lemma51"] {
        let o = bin().args([cmd, "Z6", "--sub", "0,2,4"]).output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stdout(&o));
    }
    let o = bin().args(["induce", "Z6", "--sub", "0,2,4"]).output().unwrap();
    assert!(stdout(&o).contains("ind(tau0) = 0.500000000000 chi0 + 0.500000000000 chi3"));
}

#[test]
fn every_demo_passes() {
    for id in hyperfield::demo::DEMO_IDS {
        let o = bin().args(["demo", id]).output().unwrap();
        assert_eq!(o.status.code(), Some(0), "demo {id}: {}", stdout(&o));
    }
}

#[test]
fn unknown_demo_is_an_error() {
    let o = bin().args(["demo", "9.9"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
