use std::io::Write;
use std::process::{Command, Output};

use moritakit::cli::report::{flatten, parse_text};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moritakit")).args(args).output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn temp_doc(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("moritakit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["check", "fixture:ex5_10"]).status.code(), Some(0));
    assert_eq!(bin(&["gldim", "fixture:ex5_10"]).status.code(), Some(0));
    // a resolution cut short is undecided
    assert_eq!(bin(&["gldim", "fixture:ex5_10", "--cutoff", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["check", "fixture:missing"]).status.code(), Some(1));
    assert_eq!(bin(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["--version"]).status.code(), Some(0));
}

#[test]
fn unknown_key_is_a_schema_error_with_its_path() {
    let p = temp_doc("unknown.json", r#"{"field": {"kind": "rational"}, "options": {"cutof": 3}}"#);
    let o = bin(&["check", &p]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_of(&o);
    assert_eq!(v["status"], "error");
    let msg = v["error"].as_str().unwrap();
    assert!(msg.contains("options") && msg.contains("cutof"), "{msg}");
}

#[test]
fn relation_with_unknown_arrow_cites_its_index() {
    let p = temp_doc(
        "relation.json",
        r#"{"field": {"kind": "rational"},
            "algebra": {"kind": "quiver", "vertices": ["v"], "arrows": [["x", "v", "v"]],
                        "relations": [[["1", "xx"]], [["1", "xy"]]], "truncation_length": 3}}"#,
    );
    let v = json_of(&bin(&["check", &p]));
    let msg = v["error"].as_str().unwrap();
    assert!(msg.contains("algebra.relations[1][0]"), "{msg}");
}

#[test]
fn bare_document_is_the_ground_field() {
    let p = temp_doc("bare.json", r#"{"field": {"kind": "prime", "p": 5}}"#);
    let o = bin(&["gldim", &p]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["field"], "prime(5)");
    assert_eq!(v["results"]["gldim"], 0);
    assert_eq!(v["results"]["simples"].as_array().unwrap().len(), 1);
}

#[test]
fn text_and_json_carry_the_same_values() {
    for cmd in ["check", "gldim", "simples", "bounds", "tight"] {
        let j = json_of(&bin(&[cmd, "fixture:ex5_11"]));
        let t = bin(&[cmd, "fixture:ex5_11", "--text"]);
        let pairs = parse_text(&String::from_utf8(t.stdout).unwrap()).unwrap();
        assert_eq!(pairs, flatten(&j), "{cmd}");
    }
}

#[test]
fn reports_are_byte_identical() {
    for args in [&["resolve", "fixture:ex5_1"][..], &["torsion", "fixture:ex5_10", "--pair", "YZ"], &["gorenstein", "fixture:ex3_9"]] {
        assert_eq!(bin(args).stdout, bin(args).stdout, "{args:?}");
    }
}

#[test]
fn tensor_power_bound_on_the_linear_quiver() {
    let v = json_of(&bin(&["bounds", "fixture:ex5_15", "--bound", "tensor-power:3:1"]));
    assert_eq!(v["results"]["outcome"], "satisfied");
    assert_eq!(v["results"]["lhs"], 4);
    assert_eq!(v["results"]["rhs"], 4);
    let bad = bin(&["bounds", "fixture:ex5_15", "--bound", "tensor-power:9:1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn periodic_witness_for_the_two_cycle() {
    let v = json_of(&bin(&["gldim", "fixture:ex5_1"]));
    assert_eq!(v["results"]["gldim"], "infinite");
    for s in v["results"]["simples"].as_array().unwrap() {
        assert_eq!(s["resolution"]["kind"], "periodic");
        assert_eq!(s["resolution"]["verified"], true);
    }
    assert_eq!(v["results"]["corners"]["A"], 0);
}

#[test]
fn selfinjective_ring_has_infinite_gldim_without_periodicity() {
    let v = json_of(&bin(&["gldim", "fixture:ex4_13"]));
    assert_eq!(v["status"], "ok");
    assert_eq!(v["results"]["gldim"], "infinite");
    assert!(v["results"]["selfinjective"].is_array());
}

#[test]
fn envelope_fields() {
    let v = json_of(&bin(&["check", "fixture:delta_kx2"]));
    assert_eq!(v["command"], "check");
    assert_eq!(v["tool"]["name"], "moritakit");
    assert!(v["input"]["digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(v["settings"]["cutoff"], 64);
}

#[test]
fn options_in_the_document_are_defaults_for_flags() {
    let text = moritakit::cli::fixtures::get("ex5_10").unwrap();
    let mut doc: Value = serde_json::from_str(text).unwrap();
    doc["options"] = serde_json::json!({"cutoff": 2});
    let p = temp_doc("opts.json", &doc.to_string());
    assert_eq!(bin(&["gldim", &p]).status.code(), Some(2));
    assert_eq!(bin(&["gldim", &p, "--cutoff", "16"]).status.code(), Some(0));
}
