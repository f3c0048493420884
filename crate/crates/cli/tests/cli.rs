use std::process::{Command, Output};

use fixgroup_core::expr::{parse_element, parse_field, parse_ratfun};
use fixgroup_core::{Field, FieldElement, MoebiusUnit, Poly, RatFun};
use serde_json::Value;

const CUBIC_QUOTIENT: &str = "(x^3-3*x+1)^2/(x*(x^3-x^2-2*x+1)*(x-1))";
const CHAR_TWO: &str = "(x^2+1)*(x^6+x^4+x^3+x^2+1)/(x^8+x^5+x^4+x^3+1)";

fn fixgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fixgroup")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = fixgroup(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn line<'a>(text: &'a str, label: &str) -> &'a str {
    text.lines().find_map(|l| l.strip_prefix(&format!("{label}: "))).unwrap_or_else(|| panic!("no {label} in {text}"))
}

fn element(v: &Value, k: &Field) -> FieldElement {
    parse_element(v.as_str().unwrap(), k).unwrap()
}

/// The group section of a JSON report, printed and sorted.
fn json_units(v: &Value, field: &str) -> Vec<String> {
    let k = parse_field(field).unwrap();
    let mut out: Vec<String> = v["group"]
        .as_array()
        .unwrap()
        .iter()
        .map(|u| {
            let [a, b, c, d] = ["a", "b", "c", "d"].map(|key| element(&u[key], &k));
            MoebiusUnit::new(a, b, c, d).unwrap().to_string()
        })
        .collect();
    out.sort();
    out
}

fn ratfun_from_json(v: &Value, field: &str) -> String {
    let k = parse_field(field).unwrap();
    let poly = |arr: &Value| Poly::new(&k, arr.as_array().unwrap().iter().map(|c| element(c, &k)).collect());
    RatFun::make(poly(&v["num"]), poly(&v["den"])).unwrap().to_string()
}

#[test]
fn cubic_quotient_pipeline() {
    let out = fixgroup(&["--field", "Q", "fix-group", CUBIC_QUOTIENT]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(line(&text, "group"), "{x, -1/(x - 1), (x - 1)/x}");
    assert_eq!(line(&text, "order"), "3");
    assert_eq!(line(&text, "classification"), "Cyclic(3)");
    assert_eq!(line(&text, "normal"), "false");
    assert_eq!(line(&text, "generator"), "(x^3 - 3*x + 1)/(x^2 - x)");
    assert_eq!(line(&text, "left factor"), "x^2/(x - 1)");
}

#[test]
fn characteristic_two_pipeline() {
    let v = json(&["--field", "GF(2)", "fix-group", CHAR_TWO]);
    assert_eq!(v["order"], 2);
    assert_eq!(json_units(&v, "GF(2)"), ["1/x", "x"]);
    let k = parse_field("GF(2)").unwrap();
    let h = parse_ratfun(&ratfun_from_json(&v["generator"], "GF(2)"), &k).unwrap();
    assert!(h.same_field(&parse_ratfun("x+1/x", &k).unwrap()));
    assert_eq!(ratfun_from_json(&v["left_factor"], "GF(2)"), "(x^4 + x)/(x^4 + x + 1)");
}

#[test]
fn json_has_stable_keys() {
    let v = json(&["--field", "Q", "fix-group", CUBIC_QUOTIENT]);
    for key in ["field", "verb", "group", "order", "classification", "generator", "left_factor", "normal_certified"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["field"], "Q");
    assert_eq!(v["verb"], "fix-group");
    assert_eq!(v["normal_certified"], false);
    let unit = &v["group"][1];
    for key in ["a", "b", "c", "d"] {
        assert!(unit[key].is_string());
    }
}

#[test]
fn trivial_group_has_null_components() {
    let v = json(&["--field", "Q", "fix-group", "x^9"]);
    assert_eq!(v["order"], 1);
    assert_eq!(v["generator"], Value::Null);
    assert_eq!(v["left_factor"], Value::Null);
}

#[test]
fn exact_strings_for_elements() {
    let v = json(&["--field", "Qi", "conjugate", "i*x", "x+1/2"]);
    let entries: Vec<&str> =
        v["group"].as_array().unwrap().iter().flat_map(|u| ["a", "b", "c", "d"].map(|k| u[k].as_str().unwrap())).collect();
    assert!(entries.contains(&"-1/2-1/2i"), "{entries:?}");
    let v = json(&["--field", "GF(2^2; 1,1,1)", "enumerate", "--linear"]);
    assert_eq!(v["order"], 12);
    let b: Vec<&str> = v["group"].as_array().unwrap().iter().map(|u| u["b"].as_str().unwrap()).collect();
    assert!(b.contains(&"a+1"), "{b:?}");
}

#[test]
fn text_and_json_agree() {
    for (field, f) in [("Q", CUBIC_QUOTIENT), ("GF(2)", CHAR_TWO), ("Qi", "x^4"), ("GF(3)", "x^3-x")] {
        let text = stdout(&fixgroup(&["--field", field, "fix-group", f]));
        let v = json(&["--field", field, "fix-group", f]);
        let inner = line(&text, "group").trim_start_matches('{').trim_end_matches('}');
        let mut from_text: Vec<String> = inner.split(", ").map(String::from).collect();
        from_text.sort();
        assert_eq!(from_text, json_units(&v, field), "{field}");
        assert_eq!(line(&text, "order"), v["order"].to_string());
        assert_eq!(line(&text, "classification"), v["classification"].as_str().unwrap());
        assert_eq!(line(&text, "normal"), v["normal_certified"].to_string());
        if v["generator"].is_object() {
            assert_eq!(line(&text, "generator"), ratfun_from_json(&v["generator"], field));
        }
    }
}

#[test]
fn exit_codes() {
    let constant = fixgroup(&["--field", "Q", "fix-group", "5"]);
    assert_eq!(constant.status.code(), Some(1));
    let err = String::from_utf8(constant.stderr).unwrap();
    assert!(err.contains("ConstantInput") && err.contains("stage A"), "{err}");

    assert_eq!(fixgroup(&["--field", "Q", "fix-group", "x^"]).status.code(), Some(2));
    assert_eq!(fixgroup(&["--field", "Q", "fix-group", "i*x"]).status.code(), Some(2));
    assert_eq!(fixgroup(&["--field", "GF(2)", "compose", "1/2*x", "x"]).status.code(), Some(2));
    assert_eq!(fixgroup(&["--field", "GF(4; 1,0,1)", "enumerate"]).status.code(), Some(2));
    assert_eq!(fixgroup(&["fix-group", "x"]).status.code(), Some(2));
    assert_eq!(fixgroup(&["--field", "Q", "order"]).status.code(), Some(2));
    assert_eq!(fixgroup(&["--field", "Q", "--cap", "50", "fixed-field", "x+1"]).status.code(), Some(1));
    assert_eq!(fixgroup(&["--field", "Q", "enumerate"]).status.code(), Some(1));
    assert_eq!(fixgroup(&["--help"]).status.code(), Some(0));
}

#[test]
fn unit_verbs() {
    let text = stdout(&fixgroup(&["--field", "Q", "order", "1/(1-x)"]));
    assert_eq!(line(&text, "order"), "3");
    let v = json(&["--field", "Q", "--cap", "12", "order", "x+1"]);
    assert_eq!(v["order"], Value::Null);
    let text = stdout(&fixgroup(&["--field", "Q", "conjugate", "-x", "x+1"]));
    assert_eq!(line(&text, "group"), "{x, -x + 2}");
    let text = stdout(&fixgroup(&["--field", "GF(2)", "classify", "x+1; 1/x"]));
    assert_eq!(line(&text, "classification"), "Dihedral(6)");
    let text = stdout(&fixgroup(&["--field", "Q", "fixed-field", "1/x"]));
    assert_eq!(line(&text, "generator"), "(x^2 + 1)/x");
}

#[test]
fn function_verbs() {
    let text = stdout(&fixgroup(&["--field", "Q", "compose", "x^2/(x-1)", "(x^3-3*x+1)/((x-1)*x)"]));
    let k = parse_field("Q").unwrap();
    assert_eq!(parse_ratfun(line(&text, "composition"), &k).unwrap(), parse_ratfun(CUBIC_QUOTIENT, &k).unwrap());
    let text = stdout(&fixgroup(&["--field", "Q", "left-factor", "x^2*(x-1)^2", "x^2-x"]));
    assert_eq!(line(&text, "left factor"), "x^2");
    let text = stdout(&fixgroup(&["--field", "Q", "left-factor", "x^3", "x^2"]));
    assert_eq!(line(&text, "left factor"), "none");
    let text = stdout(&fixgroup(&["--field", "Q", "normalize", "x^2+1"]));
    let nf = parse_ratfun(line(&text, "normal form"), &k).unwrap();
    assert!(nf.is_normal_form());
}

#[test]
fn finite_field_verbs() {
    let v = json(&["--field", "GF(3)", "enumerate"]);
    assert_eq!(v["order"], 24);
    assert_eq!(v["classification"], "Octahedral");
    let text = stdout(&fixgroup(&["--field", "GF(2)", "canonical-generators"]));
    assert_eq!(line(&text, "affine generator"), "x^2 + x");
    let v = json(&["--field", "GF(5)", "brute-fix-group", "x^4"]);
    let w = json(&["--field", "GF(5)", "fix-group", "x^4"]);
    assert_eq!(json_units(&v, "GF(5)"), json_units(&w, "GF(5)"));
    let text = stdout(&fixgroup(&["--field", "GF(2)", "fix-group", "(x^2+x)/(x^3+x+1)"]));
    assert_eq!(line(&text, "order"), "3");
    let small = fixgroup(&["--field", "GF(2)", "--max-extension", "1", "fix-group", "(x^2+x)/(x^3+x+1)"]);
    assert_eq!(small.status.code(), Some(1));
}
