//! Every JSON document the binary emits must validate against the schema
//! shipped next to it. The checker below covers the subset of JSON Schema
//! the schemas use: type, enum, properties, required, items, and
//! additionalProperties: false.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_rho"))
        .args(args)
        .env_remove("RHO_TOLERANCE")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().expect("exit code"),
    )
}

fn run_with_stdin(args: &[&str], stdin: &str) -> (String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rho"))
        .args(args)
        .env_remove("RHO_TOLERANCE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin handle")
        .write_all(stdin.as_bytes())
        .expect("stdin written");
    let out = child.wait_with_output().expect("binary finishes");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        out.status.code().expect("exit code"),
    )
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file"))
        .expect("schema parses")
}

fn type_matches(t: &str, doc: &Value) -> bool {
    match t {
        "object" => doc.is_object(),
        "array" => doc.is_array(),
        "string" => doc.is_string(),
        "integer" => doc.is_i64() || doc.is_u64(),
        "number" => doc.is_number(),
        "boolean" => doc.is_boolean(),
        "null" => doc.is_null(),
        other => panic!("schema names unknown type {other}"),
    }
}

fn check(schema: &Value, doc: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(allowed) = schema.get("enum") {
        let list = allowed.as_array().expect("enum is a list");
        if !list.contains(doc) {
            errors.push(format!("{path}: {doc} not among {allowed}"));
        }
        return;
    }
    if let Some(t) = schema.get("type") {
        let ok = match t {
            Value::String(s) => type_matches(s, doc),
            Value::Array(ts) => ts
                .iter()
                .any(|s| type_matches(s.as_str().expect("type name"), doc)),
            _ => panic!("malformed type at {path}"),
        };
        if !ok {
            errors.push(format!("{path}: wrong type, expected {t}, got {doc}"));
            return;
        }
    }
    if let Some(obj) = doc.as_object() {
        if let Some(req) = schema.get("required").and_then(Value::as_array) {
            for key in req {
                let key = key.as_str().expect("required key");
                if !obj.contains_key(key) {
                    errors.push(format!("{path}: missing required key {key}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        let closed = schema.get("additionalProperties") == Some(&Value::Bool(false));
        for (key, val) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => check(sub, val, &format!("{path}.{key}"), errors),
                None if closed => errors.push(format!("{path}: unexpected key {key}")),
                None => {}
            }
        }
    }
    if let (Some(arr), Some(items)) = (doc.as_array(), schema.get("items")) {
        for (i, val) in arr.iter().enumerate() {
            check(items, val, &format!("{path}[{i}]"), errors);
        }
    }
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let s = schema(schema_name);
    let mut errors = Vec::new();
    check(&s, doc, "$", &mut errors);
    assert!(
        errors.is_empty(),
        "{schema_name} violations:\n{}",
        errors.join("\n")
    );
}

fn json_output(args: &[&str]) -> Value {
    let (stdout, stderr, code) = run(args);
    assert_eq!(code, 0, "command {args:?} failed: {stderr}");
    serde_json::from_str(&stdout).expect("stdout parses as JSON")
}

#[test]
fn knot_info_documents_validate() {
    let named = json_output(&["knot-info", "--knot", "trefoil", "--format", "json"]);
    assert_valid("knot-info.json", &named);
    assert_eq!(named["knot"], "trefoil");
    let raw = json_output(&[
        "knot-info",
        "--matrix",
        "[[-1,1],[0,-3]]",
        "--format",
        "json",
    ]);
    assert_valid("knot-info.json", &raw);
    assert!(raw["knot"].is_null());
}

#[test]
fn sigfn_documents_validate() {
    let jumpy = json_output(&["sigfn", "--knot", "trefoil", "--format", "json"]);
    assert_valid("sigfn.json", &jumpy);
    assert_eq!(jumpy["breakpoints"].as_array().unwrap().len(), 2);
    let flat = json_output(&["sigfn", "--knot", "figure8", "--format", "json"]);
    assert_valid("sigfn.json", &flat);
    assert_eq!(flat["breakpoints"].as_array().unwrap().len(), 0);
}

#[test]
fn rho0_document_validates() {
    let doc = json_output(&["rho0", "--knot", "trefoil # figure8", "--format", "json"]);
    assert_valid("rho0.json", &doc);
    assert_eq!(doc["value"], "-4/3");
}

#[test]
fn depth_documents_validate() {
    let exact = json_output(&[
        "depth",
        "--word",
        "[[x1,x2],[x1,x3]]",
        "--rank",
        "3",
        "--format",
        "json",
    ]);
    assert_valid("depth.json", &exact);
    assert_eq!(exact["depth"]["kind"], "exact");
    assert_eq!(exact["depth"]["value"], 2);
    let trivial = json_output(&[
        "depth", "--word", "x1 x1^-1", "--rank", "1", "--format", "json",
    ]);
    assert_valid("depth.json", &trivial);
    assert_eq!(trivial["depth"]["kind"], "infinite");
}

#[test]
fn eval_documents_validate() {
    let clean = json_output(&[
        "eval",
        "--dsl",
        "trivial(2) |> infect([x1,x2], knot:\"unknot\")",
        "--format",
        "json",
    ]);
    assert_valid("eval.json", &clean);
    assert_eq!(clean["obstruction"]["verdict"], "inconclusive");
    let dirty = json_output(&[
        "eval",
        "--dsl",
        "trivial(2) |> infect([x1,x2], knot:\"trefoil\")",
        "--format",
        "json",
    ]);
    assert_valid("eval.json", &dirty);
    assert_eq!(dirty["obstruction"]["verdict"], "obstructed");
}

#[test]
fn bing_document_validates() {
    let doc = json_output(&[
        "bing",
        "--knot",
        "trefoil",
        "--iterations",
        "2",
        "--format",
        "json",
    ]);
    assert_valid("bing.json", &doc);
    assert_eq!(doc["curve_depth"], 2);
}

#[test]
fn family_document_validates() {
    let doc = json_output(&[
        "family",
        "--depth",
        "1",
        "--strands",
        "2",
        "--twist-sums",
        "--format",
        "json",
    ]);
    assert_valid("family.json", &doc);
    assert_eq!(doc["members"].as_array().unwrap().len(), 5);
}

#[test]
fn approx_document_validates() {
    let doc = json_output(&["approx", "--target", "1/2", "--format", "json"]);
    assert_valid("approx.json", &doc);
}

#[test]
fn independence_documents_validate() {
    let found = json_output(&[
        "independence",
        "--values",
        "1,2",
        "--bound",
        "3",
        "--format",
        "json",
    ]);
    assert_valid("independence.json", &found);
    assert_eq!(found["verdict"]["kind"], "relation_found");
    let clean = json_output(&[
        "independence",
        "--values",
        "1,1000000",
        "--bound",
        "3",
        "--format",
        "json",
    ]);
    assert_valid("independence.json", &clean);
    assert_eq!(clean["verdict"]["kind"], "no_relation_up_to");
}

#[test]
fn audit_document_validates() {
    let doc = json_output(&[
        "audit",
        "--dsl",
        "trivial(2) |> infect([x1,x2], knot:\"twist(-2)\")",
        "--format",
        "json",
    ]);
    assert_valid("audit.json", &doc);
    assert_eq!(doc["all_passed"], true);
}

#[test]
fn error_documents_validate() {
    let cases: [&[&str]; 3] = [
        &["rho0", "--knot", "nosuch"],
        &[
            "family",
            "--depth",
            "1",
            "--strands",
            "2",
            "--knots",
            "trefoil",
        ],
        &["approx", "--target", "50", "--budget", "1"],
    ];
    for args in cases {
        let (_, stderr, code) = run(args);
        assert_ne!(code, 0, "{args:?} should fail");
        let doc: Value = serde_json::from_str(stderr.trim()).expect("stderr parses as JSON");
        assert_valid("error.json", &doc);
    }
}

#[test]
fn library_schema_accepts_the_stdin_format() {
    let lib = r#"[
        {"name": "trefoil", "matrix": "trefoil"},
        {"name": "small twist", "matrix": [[-1, 1], [0, -2]]}
    ]"#;
    let doc: Value = serde_json::from_str(lib).unwrap();
    assert_valid("library.json", &doc);
    let (stdout, code) = run_with_stdin(
        &[
            "approx",
            "--target",
            "-4/3",
            "--library",
            "-",
            "--format",
            "json",
        ],
        lib,
    );
    assert_eq!(code, 0);
    let out: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(out["achieved"]["value"], "-4/3");
    assert_eq!(out["distance"], "0");
}
