use std::process::{Command, Output};

use serde_json::Value;

use pronormal_core::construct::{diagonal_subgroup, realize, GroupSpec};

const WREATH_C3_S3: &str = r#"{"wreath":{"base":{"cyclic":3},"top_degree":3}}"#;
const FROBENIUS_PRODUCT: &str = r#"{"product":[{"frobenius73":{}},{"frobenius73":{}}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pronormal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn group_eval_reports_order() {
    let out = run(&["group", "eval", WREATH_C3_S3]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["group"]["order"], "162");
    assert_eq!(v["group"]["degree"], 9);
    assert_eq!(v["group"]["handles"]["top"], "6");

    let out = run(&["group", "eval", r#"{"sp":{"n":2,"q":3}}"#]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["group"]["order"], "51840");
}

#[test]
fn group_spec_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(&path, WREATH_C3_S3).unwrap();
    let out = run(&["group", "eval", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["group"]["order"], "162");
}

#[test]
fn malformed_input_exits_2_without_output() {
    for spec in [r#"{"sym":"#, r#"{"sym":4,"extra":1}"#, r#"{"nosuch":3}"#] {
        let out = run(&["group", "eval", spec]);
        assert_eq!(code(&out), 2, "{spec}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(code(&run(&["group", "eval", "{}", "--bogus"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn diagonal_of_frobenius_product_is_not_pronormal() {
    let spec = GroupSpec::from_json(FROBENIUS_PRODUCT).unwrap();
    let p = realize(&spec).unwrap();
    let d = diagonal_subgroup(&p, "factor0.kernel", "factor1.kernel").unwrap();
    let gens = serde_json::to_string(d.generators()).unwrap();
    let out = run(&["pronormal", "check", FROBENIUS_PRODUCT, &gens]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["index"], "63");
    assert_eq!(v["verdict"]["status"], "not_pronormal");
    assert_eq!(v["verdict"]["join_order"], 49);
    assert!(v["verdict"]["failing_g"].is_array());

    for method in ["normsyl", "reduction"] {
        let out = run(&[
            "pronormal",
            "check",
            FROBENIUS_PRODUCT,
            &gens,
            "--method",
            method,
        ]);
        assert_eq!(code(&out), 1, "{method}");
        assert_eq!(json(&out)["verdict"]["method"], method);
    }
}

#[test]
fn normal_subgroup_exits_0() {
    let out = run(&[
        "pronormal",
        "check",
        r#"{"sym":4}"#,
        "[[1,0,3,2],[2,3,0,1]]",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verdict"]["status"], "pronormal");
}

#[test]
fn named_subgroup() {
    let out = run(&[
        "pronormal",
        "check",
        WREATH_C3_S3,
        "top",
        "--method",
        "normsyl",
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["index"], "27");
    assert_eq!(
        code(&run(&["pronormal", "check", WREATH_C3_S3, "nosuch"])),
        2
    );
}

#[test]
fn normsyl_on_even_index_is_a_precondition_error() {
    let out = run(&[
        "pronormal",
        "check",
        r#"{"sym":4}"#,
        "[[1,0,2,3]]",
        "--method",
        "normsyl",
    ]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));
}

#[test]
fn non_member_generators_are_rejected() {
    let out = run(&["pronormal", "check", r#"{"alt":4}"#, "[[1,0,2,3]]"]);
    assert_eq!(code(&out), 2);
    let out = run(&["pronormal", "check", r#"{"sym":4}"#, "[[1,0,2]]"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn cap_exceeded_exits_3() {
    let out = run(&[
        "pronormal",
        "check",
        r#"{"sym":4}"#,
        "[[1,0,2,3]]",
        "--cap-join",
        "2",
    ]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
    assert_eq!(code(&run(&["group", "eval", "{}", "--cap-join", "0"])), 2);
}

#[test]
fn oracle_reports_status_and_citation() {
    let out = run(&["oracle", r#"{"family":"PSp","n":3,"q":3}"#]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["status"], "has_nonpronormal");
    assert_eq!(v["citation"], "counterexample");

    assert_eq!(code(&run(&["oracle", r#"{"family":"Nope","q":3}"#])), 2);
    assert_eq!(code(&run(&["oracle", r#"{"family":"PSL2","q":3}"#])), 2);
}

#[test]
fn oddindex_of_alt5() {
    let out = run(&["oddindex", "enumerate", r#"{"alt":5}"#, "--pronormal"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let indices: Vec<&str> = v["subgroups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["index"].as_str().unwrap())
        .collect();
    assert_eq!(indices, ["15", "5", "1"]);
    assert!(v["subgroups"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["pronormal"] == true));
}

#[test]
fn repro_runs_filtered_scenarios() {
    let out = run(&["repro", "run", "--filter", "counterexample_core"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"][0]["name"], "counterexample_core");
    assert_eq!(v["results"][0]["status"], "pass");
    assert_eq!(v["summary"]["passed"], 1);

    assert_eq!(
        code(&run(&["repro", "run", "--filter", "no_such_scenario"])),
        2
    );
}

#[test]
fn repro_list_names_every_scenario() {
    let out = run(&["repro", "list"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"frobenius_product"));
    assert!(names.contains(&"sp6_direct"));
}

#[test]
fn text_format_and_out_file() {
    let out = run(&["group", "eval", WREATH_C3_S3, "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("group.order: 162"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "oracle",
        r#"{"family":"PSp","n":2,"q":5}"#,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "all_pronormal");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["oddindex", "enumerate", WREATH_C3_S3, "--pronormal"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
