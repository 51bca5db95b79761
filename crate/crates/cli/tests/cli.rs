use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn maltcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maltcat"))
        .args(args)
        .env_remove("MALTCAT_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn bundled_checks_pass() {
    for target in ["hom_z2_z2", "vdisc_hom_z2_z2", "point", "1", "S3"] {
        let o = maltcat(&["check", target, "--verify-universal"]);
        assert_eq!(o.status.code(), Some(0), "{target}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn worked_example_sizes() {
    let o = maltcat(&["reflect", "vdisc_hom_z2_z2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reflection corners: C11=1 C10=1 C01=1 C00=1"));
    let o = maltcat(&["coreflect", "vdisc_hom_z2_z2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("coreflection corners: C11=2 C10=2 C01=2 C00=2"));
}

#[test]
fn discrete_units_are_bijective() {
    let o = maltcat(&["reflect", "disc_z2"]);
    assert!(stdout(&o).contains("yes  unit is bijective"));
    let o = maltcat(&["coreflect", "disc_z2"]);
    assert!(stdout(&o).contains("yes  counit is bijective"));
}

#[test]
fn reflection_documents_reload() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.json").display().to_string();
    let o = maltcat(&["reflect", "hdisc_hom_z2_z4", "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(doc.get("unit").is_some());
    let o = maltcat(&["check", "F_hdisc_hom_z2_z4", "--in", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("yes  2-groupoid"));
}

#[test]
fn commutator_of_s3() {
    let o = maltcat(&["commutator", "S3", "full", "full", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let facts = report["facts"].as_array().unwrap();
    assert!(facts.iter().any(|f| f[0] == "[R,S]" && f[1] == "{0,3,4} {1,2,5}"));
    let o = maltcat(&["commutator", "S3", "identity", "full"]);
    assert!(stdout(&o).contains("yes  trivial"));
}

#[test]
fn corrupted_fixture_fails() {
    let dir = tempfile::tempdir().unwrap();
    let good = stdout(&maltcat(&["generate", "cyclic-group", "--n", "3"]));
    let mut doc: Value = serde_json::from_str(&good).unwrap();
    doc["name"] = "Z3bad".into();
    doc["tables"]["mul"][1][1] = 0.into();
    let path = write(dir.path(), "bad.json", &doc.to_string());
    let o = maltcat(&["check", "Z3bad", "--in", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL algebra validates (Mal'tsev identity"));
    let o = maltcat(&["suite", "--in", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL 0. fixtures validate (algebra Z3bad"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", "{\"name\": 3}");
    assert_eq!(maltcat(&["check", "Z2", "--in", &path]).status.code(), Some(2));
    assert_eq!(maltcat(&["check", "no_such_thing"]).status.code(), Some(2));
    assert_eq!(maltcat(&["commutator", "S3", "full", "nope"]).status.code(), Some(2));
    assert_eq!(maltcat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(maltcat(&["generate", "cyclic-group"]).status.code(), Some(2));
}

#[test]
fn non_groupoid_double_fails() {
    assert_eq!(maltcat(&["check", "vdisc_group_s3"]).status.code(), Some(1));
    assert_eq!(maltcat(&["reflect", "vdisc_group_s3"]).status.code(), Some(1));
}

#[test]
fn size_limit_flag_beats_environment() {
    let run = |flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_maltcat"));
        cmd.args(["reflect", "vdisc_hom_z2_z4"]).env("MALTCAT_MAX_SIZE", "2");
        if let Some(n) = flag {
            cmd.args(["--max-size", n]);
        }
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None), Some(2));
    assert_eq!(run(Some("4096")), Some(0));
}

#[test]
fn generated_files_round_trip_through_the_workspace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json").display().to_string();
    let o = maltcat(&[
        "generate",
        "vertically-discrete-double",
        "--g",
        "2",
        "--h",
        "4",
        "--k",
        "2",
        "--out",
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read_to_string(&out).unwrap();
    let o = maltcat(&["check", "vdisc_hom_z2_z4_k2", "--in", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let again = stdout(&maltcat(&[
        "generate",
        "vertically-discrete-double",
        "--g",
        "2",
        "--h",
        "4",
        "--k",
        "2",
    ]));
    assert_eq!(first, again);
}

#[test]
fn reports_are_deterministic() {
    let a = stdout(&maltcat(&["suite"]));
    let b = stdout(&maltcat(&["suite"]));
    assert_eq!(a, b);
    assert!(a.ends_with("status: 0\n"), "{a}");
}
