use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn koszulkit(args: &[&str], dir: &Path) -> (Value, i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_koszulkit"))
        .args(args)
        .current_dir(dir)
        .env_remove("KOSZULKIT_SEED")
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 report");
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (report, out.status.code().expect("exit code"), stdout)
}

fn emit_all(dir: &Path) -> PathBuf {
    for name in ["semisimple-2", "dual-numbers", "sl2-principal-block", "sl2-wall"] {
        let (_, code, _) = koszulkit(&["examples", "emit", name, "--out", "ex"], dir);
        assert_eq!(code, 0, "emit {name}");
    }
    dir.join("ex")
}

#[test]
fn examples_list_names_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code, _) = koszulkit(&["examples", "list"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(
        r["examples"],
        serde_json::json!(["semisimple-2", "dual-numbers", "sl2-principal-block", "sl2-wall"])
    );
}

#[test]
fn check_semisimple() {
    let dir = tempfile::tempdir().unwrap();
    emit_all(dir.path());
    let (r, code, _) = koszulkit(&["check", "ex/semisimple-2.json"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "ok");
    assert_eq!(r["algebra"]["dims"], serde_json::json!([2]));
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn koszul_on_dual_numbers() {
    let dir = tempfile::tempdir().unwrap();
    emit_all(dir.path());
    let (r, code, _) = koszulkit(&["koszul", "ex/dual-numbers.json", "--bound", "4"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "koszul-within-bound");
    assert_eq!(r["ext_dims"], serde_json::json!([1, 1, 1, 1, 1]));
    assert_eq!(r["quadratic_dual"], "agrees");
}

#[test]
fn dual_round_trips_through_check_and_twice_restores_dims() {
    let dir = tempfile::tempdir().unwrap();
    emit_all(dir.path());
    let (r, code, _) = koszulkit(&["dual", "ex/sl2-principal-block.json", "--out", "d1.json"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(r["matches_quadratic_dual"], true);
    let (r, code, _) = koszulkit(&["check", "d1.json"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(r["algebra"]["dims"], serde_json::json!([2, 2, 1]));
    let (_, code, _) = koszulkit(&["dual", "d1.json", "--out", "d2.json"], dir.path());
    assert_eq!(code, 0);
    let (twice, _, _) = koszulkit(&["check", "d2.json"], dir.path());
    let (original, _, _) = koszulkit(&["check", "ex/sl2-principal-block.json"], dir.path());
    assert_eq!(twice["algebra"]["dims"], original["algebra"]["dims"]);
}

#[test]
fn verify_square_on_simples_is_positive() {
    let dir = tempfile::tempdir().unwrap();
    emit_all(dir.path());
    let (r, code, _) = koszulkit(&["verify-square", "ex/sl2-wall.json", "--testset", "simples"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "all-positive");
    assert_eq!(r["objects"], 2);
    assert_eq!(r["idempotent_square"]["holds"], true);
}

#[test]
fn seeded_reports_are_byte_identical_and_echo_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    emit_all(dir.path());
    let args = ["verify-square", "ex/sl2-wall.json", "--testset", "seeded:3", "--seed", "11"];
    let (r, code, first) = koszulkit(&args, dir.path());
    let (_, _, second) = koszulkit(&args, dir.path());
    assert_eq!(code, 0);
    assert_eq!(first, second);
    assert_eq!(r["seed"], 11);
    let env = Command::new(env!("CARGO_BIN_EXE_koszulkit"))
        .args(&args[..4])
        .current_dir(dir.path())
        .env("KOSZULKIT_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), first);
}

#[test]
fn dualize_a_complex_file() {
    let dir = tempfile::tempdir().unwrap();
    emit_all(dir.path());
    // The simple at `e` as a one-term complex.
    let complex = r#"{"format_version": 1, "start": 0,
        "terms": [{"basis": [{"degree": 0, "vertex": "e"}]}]}"#;
    std::fs::write(dir.path().join("s.json"), complex).unwrap();
    let (from_file, code, _) = koszulkit(
        &["dualize", "ex/sl2-principal-block.json", "--complex", "s.json"],
        dir.path(),
    );
    assert_eq!(code, 0);
    let (builtin, _, _) = koszulkit(
        &["dualize", "ex/sl2-principal-block.json", "--object", "simple:e"],
        dir.path(),
    );
    assert_eq!(from_file["table"], builtin["table"]);
    assert_eq!(from_file["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    emit_all(dir.path());
    std::fs::write(dir.path().join("garbage.json"), "{").unwrap();
    assert_eq!(koszulkit(&["check", "garbage.json"], dir.path()).1, 2);
    assert_eq!(koszulkit(&["check", "missing.json"], dir.path()).1, 2);
    // Well-formed but invalid: an arrow to an unknown vertex.
    let bad = r#"{"format_version": 1, "vertices": ["x"],
        "arrows": [{"from": "x", "to": "y", "label": "a", "degree": 1}], "degree_bound": 2}"#;
    std::fs::write(dir.path().join("bad.json"), bad).unwrap();
    let (r, code, _) = koszulkit(&["check", "bad.json"], dir.path());
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "invalid");
    // A wall whose shift breaks the adjunction.
    let wall = std::fs::read_to_string(dir.path().join("ex/sl2-wall.json")).unwrap();
    let mut w: Value = serde_json::from_str(&wall).unwrap();
    w["shift_s"] = 0.into();
    std::fs::write(dir.path().join("w.json"), w.to_string()).unwrap();
    assert_eq!(koszulkit(&["verify-square", "w.json"], dir.path()).1, 1);
}
