use std::path::PathBuf;

use mindeg_cli::{run, EXIT_DOMAIN, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE};
use mindeg_core::witness::{verify_certificate_json, CertificateJson};
use serde_json::Value;

fn mindeg(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mindeg").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, _) = mindeg(&full);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn golden_witness_from_given_point() {
    let (code, v) = json_of(&["witness", "2,3,5", "√2+2√3", "--point", "(8, 8)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v, golden("witness_8_8.json"));
}

#[test]
fn golden_three_torsion() {
    let (code, v) = json_of(&["mindeg", "5,7,11", "√11 + 5√35"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v, golden("mindeg_three_torsion.json"));
    let (_, t) = json_of(&["torsion", "5,7,11", "√11 + 5√35"]);
    assert_eq!(t, golden("torsion_z2z6.json"));
}

#[test]
fn golden_index4() {
    let (code, v) = json_of(&["mindeg", "2,3,5", "sqrt(6)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v, golden("mindeg_index4.json"));
}

#[test]
fn golden_inconclusive() {
    let (code, v) = json_of(&["mindeg", "2,3,5", "√2+√3"]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert_eq!(v, golden("mindeg_inconclusive.json"));
}

#[test]
fn text_output_reports_degree_two() {
    let (code, out, _) = mindeg(&["mindeg", "2,3,5", "√2+2√3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("min degree: 2"));
    assert!(out.contains("verified: true"));
    let (code, out, _) = mindeg(&["mindeg", "2,3,5", "√2+√3"]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert!(out.contains("no degree-2 witness up to bound; torsion Z2×Z2"));
}

#[test]
fn exit_codes() {
    assert_eq!(mindeg(&[]).0, EXIT_USAGE);
    assert_eq!(mindeg(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(mindeg(&["--help"]).0, EXIT_OK);
    let (code, _, err) = mindeg(&["mindeg", "2,3,5", "√2 + √q"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("position 6"), "{err}");
    assert_eq!(mindeg(&["mindeg", "2,8,5", "√2"]).0, EXIT_DOMAIN);
    assert_eq!(mindeg(&["mindeg", "2,3,6", "√2"]).0, EXIT_DOMAIN);
    let (code, _, err) = mindeg(&["mindeg", "2,3,5", "√7"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("√7 is not in Q(√2, √3, √5)"), "{err}");
    assert_eq!(mindeg(&["witness", "2,3,5", "√2+2√3", "--point", "(1,1)"]).0, EXIT_DOMAIN);
    assert_eq!(mindeg(&["witness", "2,3,5", "√2+2√3", "--point", "(0,0)"]).0, EXIT_DOMAIN);
    assert_eq!(mindeg(&["mindeg", "2,3,5", "√2", "--format", "csv"]).0, EXIT_USAGE);
    assert_eq!(mindeg(&["search", "congruent:1", "--height-bound", "500"]).0, EXIT_INCONCLUSIVE);
    assert_eq!(mindeg(&["selmer-constant", "--terms", "0"]).0, EXIT_USAGE);
}

#[test]
fn dispatcher_degrees() {
    let degree = |e: &str| json_of(&["mindeg", "2,3,5", e]).1["min_degree"].clone();
    assert_eq!(degree("7/2"), Value::from(0));
    assert_eq!(degree("√2 + √3 + √5"), Value::from(1));
    assert_eq!(degree("√30"), Value::from(4));
    assert_eq!(degree("√2 + 2√3"), Value::from(2));
}

#[test]
fn verify_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let (_, v) = json_of(&["mindeg", "2,3,5", "√2+2√3"]);
    let cert = v["certificate"].clone();
    let good = dir.path().join("cert.json");
    std::fs::write(&good, serde_json::to_string(&cert).unwrap()).unwrap();
    let (code, out, _) = mindeg(&["verify", good.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");

    let mut bad = cert.clone();
    bad["polynomial"][0] = Value::from("1");
    let bad_path = dir.path().join("bad.json");
    std::fs::write(&bad_path, serde_json::to_string(&bad).unwrap()).unwrap();
    let (code, _, err) = mindeg(&["verify", bad_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("verification failed"), "{err}");

    std::fs::write(&bad_path, "{ not json").unwrap();
    assert_eq!(mindeg(&["verify", bad_path.to_str().unwrap()]).0, EXIT_DOMAIN);
    let missing = dir.path().join("missing.json");
    assert_eq!(mindeg(&["verify", missing.to_str().unwrap()]).0, EXIT_USAGE);
}

fn certificates_in(v: &Value, found: &mut Vec<CertificateJson>) {
    match v {
        Value::Object(map) => {
            if map.contains_key("polynomial_pretty") {
                found.push(serde_json::from_value(v.clone()).unwrap());
            } else {
                map.values().for_each(|x| certificates_in(x, found));
            }
        }
        Value::Array(items) => items.iter().for_each(|x| certificates_in(x, found)),
        _ => {}
    }
}

#[test]
fn every_emitted_certificate_verifies() {
    let commands: &[&[&str]] = &[
        &["mindeg", "2,3,5", "√2+2√3"],
        &["mindeg", "2,3,5", "√2+2√3", "--seed-order", "search-first", "--b0", "-3/2"],
        &["mindeg", "2,3,5", "√15"],
        &["mindeg", "2,3,5", "√2+√3+√5"],
        &["mindeg", "5,7,11", "√11+5√35"],
        &["witness", "2,3,5", "√2+2√3", "--point", "(8,-8)"],
        &["quartic", "x^4 - 4x^2 + 2", "x^3 + x"],
        &["quartic", "x^4 - 10x^2 + 1", "x^2"],
        &["survey", "family55", "--b-max", "40"],
        &["survey", "family55", "--mn", "2,1", "--offset", "4", "--b-max", "40"],
        &["survey", "twists", "--gamma-max", "40", "--height-bound", "300"],
    ];
    for cmd in commands {
        let (code, v) = json_of(cmd);
        assert_eq!(code, EXIT_OK, "{cmd:?}");
        let mut certs = Vec::new();
        certificates_in(&v, &mut certs);
        assert!(!certs.is_empty(), "{cmd:?}");
        for c in certs {
            verify_certificate_json(&c).unwrap_or_else(|e| panic!("{cmd:?}: {e}"));
        }
    }
}

#[test]
fn survey_csv_and_conjecture() {
    let (code, out, err) = mindeg(&["survey", "family55", "--b-max", "20", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("parameter,torsion,outcome,point,witness-id\n"));
    assert!(err.contains("skipped B = 3"));
    let (code, out, _) = mindeg(&[
        "survey", "conjecture", "--a-max", "5", "--b-max", "5", "--height-bound", "300", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("big_a,big_b,candidate,tried,strength\n2,3,1,"), "{out}");
    let (code, out, _) = mindeg(&["selmer-constant", "--terms", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "0.333333333333333");
}

#[test]
fn curve_specs() {
    let (code, out, _) = mindeg(&["curve", "2,2,3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Y^2 = X^3 - 22X^2 + 120X"));
    let (_, out, _) = mindeg(&["curve", "congruent:6"]);
    assert!(out.contains("Y^2 = X^3 - 36X"));
    let (code, out, _) = mindeg(&["search", "congruent:5", "--height-bound", "100"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("(-4, 6)"));
    assert_eq!(mindeg(&["curve", "2,3"]).0, EXIT_USAGE);
    assert_eq!(mindeg(&["curve", "0,2,3"]).0, EXIT_DOMAIN);
}
