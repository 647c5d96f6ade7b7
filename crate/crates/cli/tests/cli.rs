use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use msc_core::automorphisms::{are_isomorphic, decide_trivial_aut, DEFAULT_BUDGET};
use msc_core::derivations::derivation_report;
use msc_core::simplicity::decide_simple;
use msc_core::smallfield::SmallMsc;
use msc_core::{FieldSpec, Msc, MscJson};

fn msc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    assert!(
        o.status.success(),
        "exit {:?}: {}",
        o.status.code(),
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, a: &Msc) -> String {
    let p = dir.join(name);
    std::fs::write(&p, a.to_json_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn s0(field: FieldSpec) -> Msc {
    Msc::from_i64(field, &[&[0, 0, 1, 0], &[0, 0, 1, 0]]).unwrap()
}

fn golden() -> Vec<Msc> {
    let mut out = vec![
        s0(q()),
        s0(gf(5)),
        Msc::diagonal_idempotent(q(), 2),
        Msc::diagonal_idempotent(q(), 3),
        Msc::diagonal_idempotent(gf(2), 3),
        Msc::diagonal_idempotent(gf(3), 2),
        Msc::zero(gf(2), 2),
        Msc::zero(q(), 3),
        Msc::from_i64(q(), &[&[1, 0, 0, 0], &[0, 1, 1, 0]]).unwrap(),
        Msc::from_i64(q(), &[&[0, 0, 1, 0], &[0, 0, 0, 1]]).unwrap(),
        Msc::from_i64(gf(5), &[&[1, 2, 3, 4], &[4, 3, 2, 1]]).unwrap(),
        Msc::from_i64(gf(7), &[&[0, 1, 1, 0], &[2, 0, 0, 1]]).unwrap(),
        Msc::from_i64(gf(3), &[&[0, 1, 1, 0], &[2, 0, 0, 1]]).unwrap(),
        Msc::from_i64(q(), &[&[0, 1, 2, 1], &[1, 0, 1, 0]]).unwrap(),
    ];
    for idx in [1u64, 37, 100, 171, 200, 255] {
        out.push(SmallMsc::from_index(2, 2, idx).to_msc());
    }
    assert_eq!(out.len(), 20);
    out
}

#[test]
fn golden_set_matches_library() {
    let dir = TempDir::new().unwrap();
    for (k, a) in golden().iter().enumerate() {
        let path = write(dir.path(), &format!("g{k}.json"), a);
        let der = stdout_json(&msc(&["der", "--in", &path]));
        assert_eq!(der, serde_json::to_value(derivation_report(a)).unwrap(), "der #{k}");
        let simple = stdout_json(&msc(&["simple", "--in", &path]));
        assert_eq!(simple, serde_json::to_value(decide_simple(a).report()).unwrap(), "simple #{k}");
        let aut = stdout_json(&msc(&["aut", "--in", &path]));
        let lib = decide_trivial_aut(a, DEFAULT_BUDGET).report();
        assert_eq!(aut, serde_json::to_value(lib).unwrap(), "aut #{k}");
    }
}

#[test]
fn seed_example_verdicts() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "s0.json", &s0(q()));
    let der = stdout_json(&msc(&["der", "--in", &path]));
    assert_eq!(der["trivial"], true);
    assert_eq!(der["dim"], 0);
    let simple = stdout_json(&msc(&["simple", "--in", &path]));
    assert_eq!(simple["status"], "NotSimple");
    assert_eq!(simple["certificate"], serde_json::json!([["1", "1"]]));
    let audit = stdout_json(&msc(&["audit", "--field", "GF2", "--property", "trivder"]));
    assert_eq!(audit["total_msc"], 256);
}

#[test]
fn mul_and_iso() {
    let dir = TempDir::new().unwrap();
    let a = Msc::diagonal_idempotent(gf(3), 2);
    let path = write(dir.path(), "e.json", &a);
    let m = stdout_json(&msc(&["mul", "--in", &path, "--u", "1,2", "--v", "2,2"]));
    assert_eq!(m["product"], serde_json::json!(["2", "1"]));
    let g = msc_core::LinMap::from_i64(gf(3), &[&[1, 1], &[0, 1]]);
    let b = a.change_basis(&g).unwrap();
    let pathb = write(dir.path(), "b.json", &b);
    let iso = stdout_json(&msc(&["iso", "--in", &path, "--in2", &pathb]));
    assert_eq!(iso["isomorphic"], true);
    let lib = are_isomorphic(&a, &b, DEFAULT_BUDGET).unwrap().unwrap();
    assert_eq!(iso["witness"], serde_json::to_value(lib.to_strings()).unwrap());
}

#[test]
fn written_mscs_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("chain.json");
    let o = msc(&[
        "construct", "--field", "GF5", "--seed", "3", "--target-n", "4", "--c", "0,0,0,0",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let stages = v["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 3);
    for st in stages {
        let j: MscJson = serde_json::from_value(st["msc"].clone()).unwrap();
        let a = Msc::from_json(&j).unwrap();
        assert_eq!(a.to_json(), j);
        let again = Msc::from_json_str(&a.to_json_string()).unwrap();
        assert_eq!(again, a);
        assert_eq!(st["checks"]["trivial_der"], true);
    }
}

#[test]
fn seeded_commands_are_reproducible() {
    let run = || msc(&["density", "--field", "GF3", "--samples", "500", "--seed", "7"]).stdout;
    assert_eq!(run(), run());
    let w4 = msc(&["density", "--field", "GF3", "--samples", "500", "--seed", "7", "--workers", "4"]);
    assert_eq!(w4.stdout, run());
    let c = |s: &str| msc(&["construct", "--field", "Q", "--seed", s, "--target-n", "3"]).stdout;
    assert_eq!(c("11"), c("11"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "a.json", &Msc::zero(gf(2), 2));
    // usage
    assert_eq!(msc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(msc(&["der"]).status.code(), Some(2));
    assert_eq!(msc(&["density", "--field", "GF3", "--samples", "10"]).status.code(), Some(2));
    assert_eq!(msc(&["construct", "--field", "Q"]).status.code(), Some(2));
    // validation
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n":2,"field":{"type":"Q"},"entries":[["1","2","3"],["1","2","3","4"]]}"#).unwrap();
    assert_eq!(msc(&["der", "--in", bad.to_str().unwrap()]).status.code(), Some(3));
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(msc(&["der", "--in", bad.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(msc(&["der", "--in", &good, "--field", "GF4"]).status.code(), Some(3));
    // budget
    assert_eq!(msc(&["iso", "--in", &good, "--in2", &good, "--budget", "2"]).status.code(), Some(4));
    assert_eq!(msc(&["density", "--field", "GF5", "--budget", "100"]).status.code(), Some(4));
    // negative verdicts are successes
    assert_eq!(msc(&["simple", "--in", &good]).status.code(), Some(0));
}

#[test]
fn field_override_and_csv() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "s.json", &s0(q()));
    let o = stdout_json(&msc(&["aut", "--in", &path, "--field", "GF2"]));
    assert_eq!(o["method"], "Exhaustive");
    let csv = msc(&["density", "--field", "GF2,GF3", "--csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("field,p,n,samples"));
}
