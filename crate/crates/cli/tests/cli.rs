use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

use epsgrade::algebra::StructureAlgebra;
use epsgrade::exactnum::FieldSpec;
use epsgrade::grading::GradedRing;
use epsgrade::groups::GradingGroup;
use epsgrade_cli::files;

struct Run {
    code: i32,
    report: Value,
    stderr: String,
}

fn epsgrade(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_epsgrade")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().unwrap(),
        report: serde_json::from_str(&stdout).unwrap_or(Value::Null),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn example(dir: &TempDir, name: &str, field: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}-{}.json", field.replace(':', "")));
    let r = epsgrade(&["example", name, "--field", field, "-o", path.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_json(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let dade = example(&dir, "dade-modified", "gf:2");
    let r = epsgrade(&["validate", s(&dade)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["dim"], 14);

    // e2 e2 = e1 and e1 e2 = e1 but e2 e1 = 0: (e2 e2) e2 != e2 (e2 e2)
    let one = |i: usize| {
        let mut v = vec!["0"; 3];
        v[i] = "1";
        v
    };
    let broken = json!({
        "field": { "kind": "q" },
        "group": { "type": "cyclic", "n": 1 },
        "dim": 3,
        "unit": one(0),
        "structure": [
            [0, 0, one(0)], [0, 1, one(1)], [0, 2, one(2)], [1, 0, one(1)], [2, 0, one(2)],
            [1, 2, one(1)], [2, 2, one(1)]
        ],
        "degrees": ["0", "0", "0"],
    });
    let r = epsgrade(&["validate", s(&write_json(&dir, "broken.json", &broken))]);
    assert_eq!(r.code, 3);
    let msg = r.report["error"].as_str().unwrap();
    assert!(msg.contains(") e") && msg.contains("!="), "{msg}");

    let path = dir.path().join("malformed.json");
    std::fs::write(&path, "{\"field\": {\"kind\": \"q\"}, \"dim\": ").unwrap();
    assert_eq!(epsgrade(&["validate", s(&path)]).code, 2);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&dade).unwrap()).unwrap();
    doc["unit"][0] = json!("2/0");
    let r = epsgrade(&["validate", s(&write_json(&dir, "zero-den.json", &doc))]);
    assert_eq!(r.code, 2);
    assert!(r.report["error"].as_str().unwrap().contains("unit[0]"));
    assert_eq!(epsgrade(&["validate", "/nonexistent/ring.json"]).code, 2);
    assert_eq!(epsgrade(&["no-such-command"]).code, 2);
}

#[test]
fn classify_reports() {
    let dir = TempDir::new().unwrap();
    for field in ["gf:2", "gf:3", "q"] {
        let r = epsgrade(&["classify", s(&example(&dir, "dade-modified", field))]);
        assert_eq!(r.code, 0);
        assert_eq!(r.report["strong"], false);
        assert_eq!(r.report["epsilon_strong"], true);
        assert_eq!(r.report["characterizations_agree"], true);
        assert!(r.report["epsilon"]["1"].is_array());
    }
    let r = epsgrade(&["classify", s(&example(&dir, "dade-original", "gf:3"))]);
    assert_eq!((r.code, &r.report["strong"]), (0, &json!(true)));
    let r = epsgrade(&["classify", s(&example(&dir, "truncated", "q"))]);
    assert_eq!(r.code, 4);
    assert_eq!(r.report["epsilon_strong"], false);
    assert_eq!(r.report["witness"]["degree"], "1");
    assert_eq!(r.report["char_iv"]["holds"], false);
}

#[test]
fn separability_channels() {
    let dir = TempDir::new().unwrap();
    let r = epsgrade(&["separability", s(&example(&dir, "dade-modified", "gf:2"))]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["separable"], true);
    assert_eq!(r.report["trace_of_one"]["invertible"], false);
    assert_eq!(r.report["certificate_checks"]["verified"], true);

    let r = epsgrade(&["separability", s(&example(&dir, "group-algebra-z2", "gf:2"))]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["separable"], false);
    assert_eq!(r.report["oracle_verdict"], false);
    assert_eq!(r.report["kadison"]["separable"], false);
    assert_eq!(r.report["trace_of_one"]["invertible"], false);

    let r = epsgrade(&["separability", s(&example(&dir, "group-algebra-z2", "q"))]);
    assert_eq!(r.report["witness_c"], json!(["1/2", "0"]));

    let trivial = GradedRing::trivial(StructureAlgebra::matrix_algebra(FieldSpec::Rationals, 2), GradingGroup::cyclic(1).unwrap());
    let path = write_json(&dir, "trivial.json", &serde_json::to_value(files::ring_to_file(&trivial)).unwrap());
    let r = epsgrade(&["separability", s(&path)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["witness_c"], json!(["1", "0", "0", "1"]));

    let r = epsgrade(&["separability", s(&example(&dir, "truncated", "q"))]);
    assert_eq!(r.code, 4);
    assert_eq!(r.report["oracle_verdict"], false);
}

#[test]
fn frobenius_report() {
    let dir = TempDir::new().unwrap();
    let r = epsgrade(&["frobenius", s(&example(&dir, "group-algebra-z3", "q"))]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["identities_hold"], true);
    assert_eq!(r.report["kadison_agrees"], true);
    assert_eq!(r.report["pairs"].as_array().unwrap().len(), 3);
    let r = epsgrade(&["frobenius", s(&example(&dir, "group-algebra-z3", "gf:3"))]);
    assert_eq!((r.code, &r.report["separable"]), (0, &json!(false)));
}

#[test]
fn crossed_product_and_extraction() {
    let dir = TempDir::new().unwrap();
    let half = example(&dir, "half-action", "q");
    assert_eq!(epsgrade(&["validate", s(&half)]).code, 0);
    let out = dir.path().join("half-ring.json");
    let r = epsgrade(&["crossed-product", s(&half), "-o", s(&out)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["dim"], 3);
    let ring = files::load_ring(&out).unwrap();
    assert_eq!(ring.dim(), 3);
    let r = epsgrade(&["classify", s(&out)]);
    assert_eq!((&r.report["strong"], &r.report["epsilon_strong"]), (&json!(false), &json!(true)));

    let r = epsgrade(&["extract-action", s(&example(&dir, "dade-modified", "gf:2"))]);
    assert_eq!(r.code, 7);
    assert_eq!(r.report["conclusive"], true);
    assert!(r.report["note"].as_str().unwrap().starts_with("exhaustive: all 16 elements"));
    let r = epsgrade(&["extract-action", s(&example(&dir, "dade-modified", "q"))]);
    assert_eq!((r.code, &r.report["conclusive"]), (7, &json!(false)));

    let kz2 = example(&dir, "group-algebra-z2", "q");
    let action = dir.path().join("kz2-action.json");
    let r = epsgrade(&["extract-action", s(&kz2), "--verify-roundtrip", "-o", s(&action)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["roundtrip_isomorphic"], true);
    let rebuilt = dir.path().join("kz2-rebuilt.json");
    assert_eq!(epsgrade(&["crossed-product", s(&action), "-o", s(&rebuilt)]).code, 0);
    assert_eq!(files::load_ring(&rebuilt).unwrap(), files::load_ring(&kz2).unwrap());

    let sections = write_json(&dir, "sections.json", &json!({ "0": ["1", "0"], "1": ["0", "3"] }));
    let r = epsgrade(&["extract-action", s(&kz2), "--sections", s(&sections), "--verify-roundtrip"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let bad = write_json(&dir, "bad-sections.json", &json!({ "0": ["1", "0"], "1": ["1", "0"] }));
    assert_eq!(epsgrade(&["extract-action", s(&kz2), "--sections", s(&bad)]).code, 3);
}

#[test]
fn action_axiom_failures() {
    let dir = TempDir::new().unwrap();
    let half = example(&dir, "half-action", "q");
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&half).unwrap()).unwrap();
    doc["twist"] = json!([["1", "1", ["2", "0"]], ["0", "1", ["2", "0"]]]);
    let path = write_json(&dir, "tampered.json", &doc);
    let r = epsgrade(&["validate", s(&path)]);
    assert_eq!(r.code, 6);
    assert_eq!(r.report["violations"][0]["axiom"], "P4");
    let r = epsgrade(&["crossed-product", s(&path)]);
    assert_eq!(r.code, 6);
    assert_eq!(r.report["violations"][0]["axiom"], "P4");

    doc["twist"] = json!([]);
    doc["idempotents"]["1"] = json!(["1", "1/2"]);
    let r = epsgrade(&["validate", s(&write_json(&dir, "not-idempotent.json", &doc))]);
    assert_eq!(r.code, 6);
}

#[test]
fn examples_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = std::fs::read_to_string(example(&dir, "random", "gf:3")).unwrap();
    let b = epsgrade(&["example", "random", "--field", "gf:3"]);
    assert_eq!(b.code, 0);
    assert_eq!(serde_json::from_str::<Value>(&a).unwrap(), b.report);
    let r = epsgrade(&["example", "morita-from-dade", "--field", "gf:3"]);
    assert_eq!(r.report["dim"], 36);
}

#[test]
fn corpus_run_agrees() {
    let r = epsgrade(&["corpus-run", "--count", "24", "--seed", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["agreement"], 24);
}

#[test]
fn text_format_and_report_file() {
    let dir = TempDir::new().unwrap();
    let ring = example(&dir, "group-algebra-z2", "q");
    let out = dir.path().join("report.txt");
    let r = epsgrade(&["classify", s(&ring), "--format", "text", "-o", s(&out)]);
    assert_eq!(r.code, 0);
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.contains("epsilon_strong: true\n"));
    assert!(text.contains("  1: [1, 0]\n"));
}
