mod common;

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use cadiv::cli::{run, Request, Verb};
use common::CORPUS;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn golden_document(verb: Verb) -> String {
    let mut out = String::new();
    for (f, _) in CORPUS {
        out.push_str(&run(&Request::new(verb, *f)).to_json());
        out.push('\n');
    }
    out
}

fn check_golden(verb: Verb) {
    let path = golden_path(&format!("{}.jsonl", verb.name()));
    let got = golden_document(verb);
    if std::env::var_os("CADIV_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    for (g, w) in got.lines().zip(want.lines()) {
        assert_eq!(g, w);
    }
    assert_eq!(got.lines().count(), want.lines().count());
}

#[test]
fn golden_classify() {
    check_golden(Verb::Classify);
}

#[test]
fn golden_count() {
    check_golden(Verb::Count);
}

#[test]
fn golden_enumerate() {
    check_golden(Verb::Enumerate);
}

#[test]
fn json_shape() {
    let r = run(&Request::new(Verb::Normalize, "x*y + z^3 + t^6 + x^2*y").weights("1,5,2,1"));
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "errors", "input", "result", "witnesses"]);
    assert_eq!(v["result"]["polynomial"], "x*y + z^3 + t^6");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
    assert!(v["witnesses"][0]["inverse_components"].is_object());
}

#[test]
fn member_type2() {
    let r = run(&Request::new(Verb::Member, "x*y + z^2 + t^3").weights("1,5,3,2"));
    assert_eq!(r.exit_code(), 0);
    let res = r.result.unwrap();
    assert_eq!(res["verdict"], "member");
    assert_eq!(res["class"]["kind"], "type2");
    assert_eq!(res["class"]["discrepancy"], 4);
}

#[test]
fn enumerate_counts() {
    let r = run(&Request::new(Verb::Enumerate, "x*y + z^4 + t^4"));
    let res = r.result.unwrap();
    assert_eq!(res["classes"].as_array().unwrap().len(), 2);
    assert_eq!(res["count_over_base"], 3);
    assert_eq!(res["count_local_analytic"], 2);
}

#[test]
fn errors_carry_codes() {
    let r = run(&Request::new(Verb::Classify, "q + q"));
    assert_eq!(r.exit_code(), 1);
    assert_eq!(r.errors[0].code, "unknown-variable");
    let r = run(&Request::new(Verb::Classify, "x + $"));
    assert_eq!(r.errors[0].code, "syntax");
    assert!(r.errors[0].message.contains("column 5"), "{}", r.errors[0].message);
    let r = run(&Request::new(Verb::Member, "x*y + z^2 + t^3"));
    assert_eq!(r.errors[0].code, "precondition-violated");
    let r = run(&Request::new(Verb::Classify, "x*y + z^2 + t^3").weights("1,2"));
    assert_eq!(r.exit_code(), 0);
    let r = run(&Request::new(Verb::Blowup, "x*y + z^2 + t^3").weights("1,2"));
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn jet_order_flag() {
    let mut req = Request::new(Verb::Classify, "x*y + z^2 + t^3 + z^9");
    req.jet_order = Some(3);
    assert_eq!(run(&req).result.unwrap()["type_tag"], "A2");
    req.jet_order = Some(2);
    assert_eq!(run(&req).errors[0].code, "bound-violated");
}

#[test]
fn witness_verb() {
    let lifts = |params: &str| {
        let r = run(&Request::new(Verb::Witness, "x*y + z^3 + t^6").weights("1,5,2,1").params(params));
        assert_eq!(r.exit_code(), 0, "{}", r.text);
        r.result.unwrap()["lift"]["lifts"].as_bool().unwrap()
    };
    assert!(lifts("0"));
    assert!(!lifts("1/3"));
    let r = run(&Request::new(Verb::Witness, "x*y + z^3 + t^6").weights("1,1,1,1").params("0"));
    assert_eq!(r.exit_code(), 2);
}

fn cadiv(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cadiv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn binary_exit_codes() {
    assert_eq!(cadiv(&["member", "x*y + z^2 + t^3", "--weights", "1,5,3,2"], "").0, 0);
    assert_eq!(cadiv(&["member", "x*y + z^2 + t^3", "--weights", "2,2,1,1"], "").0, 2);
    assert_eq!(cadiv(&["classify", "q + q"], "").0, 1);
    let (code, out) = cadiv(&["witness", "x^2 + y^2 + z^3 + x*t^2", "--weights", "4,3,2,1", "--params", "1,1,0"], "");
    assert_eq!(code, 0);
    assert!(out.contains("\nlifts ("), "{out}");
    let (code, out) = cadiv(&["witness", "x^2 + y^2 + z^3 + x*t^2", "--weights", "4,3,2,1", "--params", "-1,0,1"], "");
    assert_eq!(code, 0);
    assert!(out.contains("does not lift"), "{out}");
}

#[test]
fn binary_batch() {
    let (code, out) = cadiv(&["count", "-", "--json"], "x*y + z^2 + t^2\n\nx*y + z^3 + t^3\nsmooth\n");
    assert_eq!(code, 0);
    let docs: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(docs.len(), 3);
    assert_eq!(docs[0]["result"]["count_over_base"], 1);
    assert_eq!(docs[1]["result"]["count_over_base"], 2);
    assert_eq!(docs[2]["result"]["count_over_base"], "uncountable");
    let (code, _) = cadiv(&["classify", "-"], "x*y + z^2\nx + \n");
    assert_eq!(code, 1);
}
