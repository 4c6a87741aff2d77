use std::path::PathBuf;

use serde_json::Value;
use sullivan_cli::{run, Output, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};

fn model(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name);
    p.to_string_lossy().into_owned()
}

fn sullivan(args: &[&str]) -> Output {
    let mut full = vec!["sullivan"];
    full.extend_from_slice(args);
    run(full)
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("sullivan-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn analyze_example() {
    let out = sullivan(&["analyze", &model("mixed-length.model"), "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["pure"], true);
    assert_eq!(v["minimal"], true);
    assert_eq!(v["length"]["mixed"], serde_json::json!([4, 5]));
    assert_eq!(v["elliptic"], true);
    assert_eq!(v["chi_pi"], -1);
    assert_eq!(v["formal_dimension"], 81);
    assert_eq!(v["exponents"]["x1"], 7);
    assert_eq!(v["exponents"]["x2"], 5);
}

#[test]
fn search_example_is_negative() {
    let out = sullivan(&["search", &model("mixed-length.model")]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(out.stdout.starts_with("no homogeneous F₀-basis extension"));
    let v = json(&sullivan(&["search", &model("mixed-length.model"), "--json"]));
    assert_eq!(v["found"], Value::Null);
    assert_eq!(v["exhaustive"], true);
    assert_eq!(v["subsets"].as_array().unwrap().len(), 3);
    assert_eq!(v["subsets"][0]["witness"], "x1");
}

#[test]
fn bound_cp3() {
    let out = sullivan(&["bound", &model("cp3.model"), "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["cat"], 3);
    assert_eq!(v["tc_upper"], 6);
    assert_eq!(v["provenance"], "thm-3.1");
    assert_eq!(v["cat_provenance"], "lechuga-murillo");
}

#[test]
fn bound_coformal_and_nonpure() {
    let v = json(&sullivan(&["bound", &model("coformal.model"), "--json"]));
    assert_eq!((v["tc_upper"].as_i64(), v["provenance"].as_str()), (Some(5), Some("cor-3.2")));
    let v = json(&sullivan(&["bound", &model("nonpure.model"), "--pure-sub", "x,y1,y2,y3", "--json"]));
    assert_eq!((v["tc_upper"].as_i64(), v["provenance"].as_str()), (Some(5), Some("cor-3.5")));
    let out = sullivan(&["bound", &model("nonpure.model"), "--pure-sub", "y1,y2,y3", "--json"]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert_eq!(json(&out)["error"]["code"], "even-mismatch");
    let out = sullivan(&["bound", &model("nonpure.model")]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(out.stderr.contains("not-pure"));
}

#[test]
fn extend_outputs() {
    let v = json(&sullivan(&["extend", &model("staircase.model"), "--json"]));
    let elems: Vec<&str> = v["z_odd"].as_array().unwrap().iter().map(|z| z["element"].as_str().unwrap()).collect();
    assert_eq!(elems, ["y1", "y3"]);
    assert_eq!(v["trace"].as_array().unwrap().len(), 2);
    assert!(v.get("seed").is_none());
    let v = json(&sullivan(&["extend", &model("pencil.model"), "--json", "--seed", "9"]));
    assert_eq!(v["seed"], 9);
    let out = sullivan(&["extend", &model("mixed-length.model")]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(out.stderr.contains("non-constant-length"));
}

#[test]
fn cohomology_table() {
    let v = json(&sullivan(&["cohomology", &model("s2.model"), "--up-to", "4", "--json"]));
    assert_eq!(v["dims"], serde_json::json!([1, 0, 1, 0, 0]));
    let out = sullivan(&["cohomology", &model("s2.model"), "--up-to", "80", "--max-degree", "40"]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn input_errors() {
    let bad = scratch("bad-degree.model", "even x : 2\nodd y : 3 = x\n");
    let out = sullivan(&["validate", &bad]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
    let out = sullivan(&["validate", "/nonexistent/file.model"]);
    assert_eq!(out.code, EXIT_INPUT);
    let out = sullivan(&["frobnicate"]);
    assert_eq!(out.code, EXIT_INPUT);
    let out = sullivan(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("analyze"));
}

#[test]
fn non_elliptic_model() {
    let m = scratch("flat.model", "even x1 : 2\neven x2 : 2\nodd y : 3 = x1^2\n");
    let v = json(&sullivan(&["analyze", &m, "--json"]));
    assert_eq!(v["elliptic"], false);
    assert!(v.get("exponents").is_none());
    let out = sullivan(&["extend", &m, "--json"]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert_eq!(json(&out)["error"]["code"], "not-elliptic");
}

#[test]
fn validate_text_report() {
    let out = sullivan(&["validate", &model("s2.model")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        out.stdout,
        "model s2\n  pure: true\n  minimal: true\n  differential: constant length 2\n  chi_pi: 0\n"
    );
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        vec!["analyze", "mixed-length.model"],
        vec!["extend", "pencil.model"],
        vec!["search", "staircase.model"],
        vec!["bound", "coformal.model"],
    ] {
        let path = model(args[1]);
        let a = sullivan(&[args[0], &path, "--json"]);
        let b = sullivan(&[args[0], &path, "--json"]);
        assert_eq!(a, b);
    }
}
