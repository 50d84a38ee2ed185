use std::path::PathBuf;
use std::process::Command;

use frobkit::cli::{run, Outcome};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn frobkit(args: &[&str]) -> Outcome {
    run(std::iter::once("frobkit").chain(args.iter().copied()))
}

fn report(outcome: &Outcome) -> Value {
    serde_json::from_str(&outcome.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", outcome.stdout, outcome.stderr))
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn sum_of_two_evaluations_is_a_2_homomorphism() {
    let out = frobkit(&["classify", "--map", &data("sum2.json"), "--n", "2", "--bound", "10"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = report(&out);
    assert_eq!(r["tool"], "frobkit");
    assert_eq!(r["command"], "classify");
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["seed"], Value::Null);
    assert_eq!(r["config"]["bound"], 10);
    assert_eq!(r["result"]["checked_bound"], 10);
    assert!(r["result"]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn wrong_claims_fail_with_witnesses() {
    let out = frobkit(&["classify", "--map", &data("diff11.json"), "--n", "2"]);
    assert_eq!(out.code, 1);
    let r = report(&out);
    assert_eq!(r["verdict"], "fail");
    assert!(!r["result"]["witnesses"].as_array().unwrap().is_empty());

    let out = frobkit(&["classify", "--map", &data("diff11.json"), "--pq", "1", "1"]);
    assert_eq!(out.code, 0);
}

#[test]
fn degrees_are_detected_and_confirmed() {
    let out = frobkit(&["classify", "--map", &data("diff11.json"), "--detect", "3", "3"]);
    assert_eq!(out.code, 0);
    let r = report(&out);
    assert_eq!(r["result"]["detected"], serde_json::json!({"p": 1, "q": 1}));
    assert_eq!(r["result"]["confirmation"]["verdict"], "pass");

    let out = frobkit(&["classify", "--map", &data("half.json"), "--detect", "3", "3"]);
    assert_eq!(out.code, 1);
    assert_eq!(report(&out)["result"]["detected"], Value::Null);
}

#[test]
fn randomized_strategy_respects_require_certainty() {
    let args = ["classify", "--map", &data("sum2.json"), "--n", "2", "--strategy", "random", "--samples", "6", "--seed", "9"];
    let out = frobkit(&args);
    assert_eq!(out.code, 0);
    assert_eq!(report(&out)["seed"], 9);
    let mut certain = args.to_vec();
    certain.push("--require-certainty");
    assert_eq!(frobkit(&certain).code, 2);
}

#[test]
fn algebra_axiom_check() {
    let out = frobkit(&["check-algebra", "--algebra", &data("three_points.json")]);
    assert_eq!(out.code, 0);
    assert_eq!(report(&out)["result"]["split"], true);

    let out = frobkit(&["check-algebra", "--algebra", &data("not_commutative.json")]);
    assert_eq!(out.code, 1);
    let r = report(&out);
    assert_eq!(r["result"]["violations"][0]["axiom"], "commutativity");
}

#[test]
fn invalid_algebras_are_rejected_before_use() {
    let dir = std::env::temp_dir().join(format!("frobkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let map = dir.join("bad_domain.json");
    let text = format!(r#"{{"domain": {:?}, "codomain": "Q", "matrix": [["1", "0"]]}}"#, data("not_commutative.json"));
    std::fs::write(&map, text).unwrap();
    let out = frobkit(&["classify", "--map", map.to_str().unwrap(), "--n", "1"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("commutativity") || out.stderr.contains("Commutativity"), "{}", out.stderr);
}

#[test]
fn malformed_json_reports_location() {
    let out = frobkit(&["check-algebra", "--algebra", &data("malformed.json")]);
    assert_eq!(out.code, 3);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("malformed.json") && out.stderr.contains("line 4"), "{}", out.stderr);

    let out = frobkit(&["charfn", "--map", &data("sum2.json"), "--elem", &data("missing.json")]);
    assert_eq!(out.code, 3);
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(frobkit(&["classify", "--map", &data("sum2.json")]).code, 3);
    assert_eq!(frobkit(&["classify", "--map", &data("sum2.json"), "--n", "2", "--pq", "1", "1"]).code, 3);
    assert_eq!(frobkit(&["no-such-command"]).code, 3);
    assert_eq!(frobkit(&["sympower", "--algebra", &data("three_points.json"), "--n", "2", "--verify-key"]).code, 3);
    let help = frobkit(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify-all"));
}

#[test]
fn characteristic_function_report() {
    let out = frobkit(&[
        "charfn", "--map", &data("diff11.json"), "--elem", &data("a.json"), "--order", "6", "--at-infinity",
        "--berezinian", "reconstruction",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = report(&out);
    // a = (2, -1/3, 5): R = (1 + 2z)/(1 - z/3), Ber = 2 / (-1/3).
    assert_eq!(r["result"]["berezinian"][0], "-6");
    assert_eq!(r["result"]["character"]["integral"], 0);
    assert_eq!(r["result"]["psis"][1][0], "7/3");
}

#[test]
fn frobenius_map_vanishes_past_degree() {
    let elems = [data("a.json"), data("b.json"), data("c.json")];
    let mut args = vec!["frobenius", "--map", "", "--elems"];
    let map = data("sum2.json");
    args[2] = &map;
    args.extend(elems.iter().map(String::as_str));
    args.push("--check-symmetry");
    let out = frobkit(&args);
    assert_eq!(out.code, 0);
    let r = report(&out);
    assert_eq!(r["result"]["value"][0], "0");
    assert_eq!(r["result"]["symmetric"], true);

    args.push("--no-memo");
    assert_eq!(report(&frobkit(&args))["result"]["value"][0], "0");
}

#[test]
fn symmetric_power_round_trips() {
    let out = frobkit(&[
        "sympower", "--algebra", &data("three_points.json"), "--n", "2", "--verify-key", "--roundtrip", "--map",
        &data("sum2.json"), "--elem", &data("a.json"),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = report(&out);
    assert_eq!(r["result"]["dim"], 6);
    assert_eq!(r["result"]["key_formula"]["holds"], true);
    assert_eq!(r["result"]["roundtrip"]["f_to_F_to_f"], true);

    let out = frobkit(&[
        "sympower", "--algebra", &data("dual_numbers.json"), "--n", "2", "--roundtrip", "--map",
        &data("twice_augmentation.json"),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);

    let out = frobkit(&["sympower", "--algebra", &data("three_points.json"), "--n", "2", "--roundtrip", "--map", &data("diff11.json")]);
    assert_eq!(out.code, 1);
}

#[test]
fn finite_space_classes() {
    let out = frobkit(&["sympq", "--points", "x,y", "--p", "2", "--q", "1", "--verify"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = report(&out);
    assert_eq!(r["result"]["class_count"], 4);
    assert_eq!(r["result"]["ev_well_defined"], true);

    let list = report(&frobkit(&["sympq", "--points", "x,y,z", "--p", "1", "--q", "1", "--list"]));
    assert_eq!(list["result"]["class_count"], 7);
    assert_eq!(list["result"]["classes"][0]["representative"], "(x|x)");
}

#[test]
fn probe_is_inconclusive_and_deterministic() {
    let args = ["sympq", "--points", "x,y", "--p", "1", "--q", "1", "--probe", "--trials", "40", "--seed", "5"];
    let first = frobkit(&args);
    assert_eq!(first.code, 2);
    let r = report(&first);
    assert_eq!(r["verdict"], "inconclusive");
    assert_eq!(r["seed"], 5);
    assert_eq!(without_timing(r), without_timing(report(&frobkit(&args))));
}

#[test]
fn mutated_suite_names_the_failing_criterion() {
    let out = frobkit(&["verify-all", "--mutation", "psi-sign"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("C2"), "{}", out.stderr);
    let r = report(&out);
    assert_eq!(r["verdict"], "fail");
    assert!(r["result"]["failing"].as_array().unwrap().contains(&Value::from(2)));
}

#[test]
fn binary_runs_the_desk_suite_and_writes_reports() {
    let dir = std::env::temp_dir().join(format!("frobkit-bin-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_file = dir.join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_frobkit"))
        .args(["verify-all", "--suite", "desk", "--out"])
        .arg(&out_file)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0), "{}", String::from_utf8_lossy(&status.stderr));
    assert!(status.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["result"]["outcomes"].as_array().unwrap().len(), 11);

    let bad = Command::new(env!("CARGO_BIN_EXE_frobkit")).args(["classify", "--n", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(3));
}
