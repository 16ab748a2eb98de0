use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tsetlin::{RelationSet, Tableau};

const S3: &str = r#"{"n":3,"relations":[
  {"from":[3,1],"rel":">=","to":[2,1]},{"from":[2,1],"rel":">","to":[3,2]},
  {"from":[3,2],"rel":">=","to":[2,2]},{"from":[2,2],"rel":">","to":[3,3]},
  {"from":[2,1],"rel":">=","to":[1,1]},{"from":[1,1],"rel":">","to":[2,2]}]}"#;
const STD: &str = r#"{"n":3,"rows":[[2,0,-2],[1,-1],[0]]}"#;
const REMARK: &str =
    r#"{"n":3,"anchors":{"a":"1/2","b":"1/3"},"rows":[[3,3,{"anchor":"a","offset":0}],[4,2],[{"anchor":"b","offset":0}]]}"#;
const REMARK_SET: &str = r#"{"n":3,"relations":[{"from":[3,2],"rel":">=","to":[2,2]},{"from":[2,1],"rel":">","to":[3,1]}]}"#;

fn tsetlin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsetlin")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn verify_module_from_files() {
    let (rel, seed) = (file(S3), file(STD));
    let o = tsetlin(&[
        "verify-module",
        "--relations",
        rel.path().to_str().unwrap(),
        "--seed",
        seed.path().to_str().unwrap(),
        "--radius",
        "2",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = tsetlin(&["verify-module", "--relations", S3, "--seed", STD, "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["tableaux"], 8);
}

#[test]
fn gg_check_exit_codes() {
    let o = tsetlin(&["gg-check", "--n", "3", "--family", "[[0,1],[0,3]]", "--top", "[3,1,-1]", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["verdict"], "not_module");
    assert!(v["witness"].is_object());
    assert!(!v["defect"].as_array().unwrap().is_empty());

    let o = tsetlin(&["gg-check", "--n", "3", "--family", "[[1,2],[1,3]]", "--top", "[3,1,-1]"]);
    assert_eq!(code(&o), 0);
    let o = tsetlin(&["gg-check", "--n", "2", "--family", "[[1,2],[1,3]]", "--top", "[3,1,-1]"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn malformed_input_is_exit_two() {
    let o = tsetlin(&["reduce", "--relations", r#"{"n":3,"relations":[{"from":[3,1]"#]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(code(&tsetlin(&["reduce", "--relations", "/no/such/file.json"])), 2);
    assert_eq!(code(&tsetlin(&["check-standard", "--seed", r#"{"n":2,"rows":[[1,0]]}"#])), 2);
    assert_eq!(code(&tsetlin(&["apply", "--relations", S3, "--seed", STD, "--word", "x9"])), 2);
}

#[test]
fn emitted_json_round_trips() {
    let o = tsetlin(&["reduce", "--relations", S3, "--format", "json"]);
    let v = json(&o);
    let c: RelationSet = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&c).unwrap(), v);

    let o = tsetlin(&["sample-realization", "--relations", REMARK_SET, "--seed-rng", "4", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["rng_seed"], 4);
    let t: Tableau = serde_json::from_value(v["tableau"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&t).unwrap(), v["tableau"]);
}

#[test]
fn reports_are_byte_stable() {
    let args = ["sample-realization", "--relations", S3, "--seed-rng", "17", "--format", "json"];
    assert_eq!(tsetlin(&args).stdout, tsetlin(&args).stdout);
    let args = ["gg-sweep", "--n", "3", "--top", "[3,1,-1]", "--radius", "1", "--format", "json"];
    let (a, b) = (tsetlin(&args), tsetlin(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn remark_tableau_verbs() {
    assert_eq!(code(&tsetlin(&["irreducible", "--relations", REMARK_SET, "--seed", REMARK])), 0);
    assert_eq!(code(&tsetlin(&["check-admissible", "--relations", REMARK_SET])), 0);
    assert_eq!(code(&tsetlin(&["multiplicity", "--relations", REMARK_SET, "--seed", REMARK])), 0);
    let v = json(&tsetlin(&["frz", "--seed", REMARK, "--format", "json"]));
    assert_eq!(v["outcome"], "maximal");
    let v = json(&tsetlin(&["fingerprint", "--seed", REMARK, "--format", "json"]));
    assert!(v["gamma"].is_object() && v["row_multisets"].is_array());
}

#[test]
fn relation_set_verbs() {
    let v = json(&tsetlin(&["decompose", "--relations", REMARK_SET, "--format", "json"]));
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(code(&tsetlin(&["check-noncritical", "--relations", S3])), 0);
    assert_eq!(code(&tsetlin(&["check-standard", "--seed", STD])), 0);
    let bad = r#"{"n":3,"relations":[{"from":[2,1],"rel":">=","to":[1,1]},{"from":[1,1],"rel":">","to":[2,2]},{"from":[2,2],"rel":">=","to":[3,2]}]}"#;
    assert_eq!(code(&tsetlin(&["check-admissible", "--relations", bad])), 1);
    let o = tsetlin(&["rr-explore", "--n", "3", "--limit", "15"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn apply_and_gamma() {
    let v = json(&tsetlin(&["apply", "--relations", S3, "--seed", STD, "--word", "h1", "--format", "json"]));
    assert!(v.is_array());
    let o = tsetlin(&["gamma", "--relations", S3, "--seed", STD, "--m", "3", "--k", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&tsetlin(&["enumerate-basis", "--relations", S3, "--seed", STD, "--radius", "4", "--format", "json"]));
    assert_eq!(v["count"], 8);
}
