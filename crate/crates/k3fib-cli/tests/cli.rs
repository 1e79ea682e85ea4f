//! End-to-end checks of the k3fib binary: exit codes, output shapes, and
//! report determinism.

use std::process::{Command, Output};

fn k3fib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3fib"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn verify_single_fibration_text() {
    let out = k3fib(&["verify", "--fibration", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("fibration 3: PASS"));
    assert!(text.contains("I6* + III* + 3 I1"));
    assert!(text.contains("<3/2> + Z/2Z"));
    assert!(text.contains("heights:  3/2"));
}

#[test]
fn verify_all_json_passes_and_is_deterministic() {
    let out1 = k3fib(&["verify", "--fibration", "all", "--format", "json"]);
    assert!(out1.status.success());
    let text = String::from_utf8(out1.stdout.clone()).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["pass"], serde_json::Value::Bool(true));
    assert_eq!(doc["fibrations"].as_array().unwrap().len(), 6);
    for f in doc["fibrations"].as_array().unwrap() {
        for (key, val) in f["checks"].as_object().unwrap() {
            assert_eq!(val, &serde_json::Value::Bool(true), "check {key} in {f}");
        }
    }
    // exact rationals as strings, never floats
    assert_eq!(doc["fibrations"][2]["mw"]["heights"][0], "3/2");

    let out2 = k3fib(&["verify", "--fibration", "all", "--format", "json"]);
    assert_eq!(out1.stdout, out2.stdout, "byte-identical reports");

    // lossless round trip: parse, re-serialize, compare
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    assert_eq!(doc, reparsed);
}

#[test]
fn verify_rejects_bad_fibration_id() {
    let out = k3fib(&["verify", "--fibration", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_out_file() {
    let dir = std::env::temp_dir().join("k3fib-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = k3fib(&[
        "verify",
        "--fibration",
        "5",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("\"id\": 5"));
}

#[test]
fn tate_fibration_1_table() {
    let out = k3fib(&["tate", "--curve", "0;0;0;0;u^5*(u-1)^2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("u; II*; 10; 9; 10"));
    assert!(text.contains("u-1; IV; 4; 3; 4"));
    assert!(text.contains("inf; II*; 10; 9; 10"));
    assert!(text.contains("euler total: 24"));
}

#[test]
fn tate_fibration_4_places() {
    let out = k3fib(&["tate", "--curve", "0;1;0;-2*u^6;u^12"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("u; I18; 18; 18; 18"));
    assert!(text.contains("27*u^6+4; I1; 1; 1; 1"));
}

#[test]
fn tate_constant_curve_warns_about_euler() {
    let out = k3fib(&["tate", "--curve", "0;0;0;0;1"]);
    assert!(
        out.status.success(),
        "non-K3 input is a warning, not an error"
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("euler total: 0"));
    assert!(text.contains("not an elliptic K3"));
}

#[test]
fn tate_rejects_garbage_and_degenerate() {
    let out = k3fib(&["tate", "--curve", "0;0;0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = k3fib(&["tate", "--curve", "0;0;0;0;oops"]);
    assert_eq!(out.status.code(), Some(2));
    // singular: y^2 = x^3
    let out = k3fib(&["tate", "--curve", "0;0;0;0;0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tate_base_field_collapses_rationally() {
    let out = k3fib(&[
        "tate",
        "--curve",
        "0;0;0;0;a^3*u^5*(u-1)^2",
        "--base-field",
        "a^3-4",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("euler total: 24"));
}

#[test]
fn divisor_checks() {
    for check in ["func", "div1", "div4"] {
        let out = k3fib(&["divisor", "--check", check]);
        assert!(out.status.success(), "--check {check}");
    }
    // div3 as printed fails without --fix-typos
    let out = k3fib(&["divisor", "--check", "div3"]);
    assert_eq!(out.status.code(), Some(1));
    // and is repaired with it
    let out = k3fib(&["divisor", "--check", "div3", "--fix-typos"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("recognized as III*"));
    let out = k3fib(&["divisor", "--check", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn twist_commands() {
    let out = k3fib(&["twist"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("true"));

    let out = k3fib(&["twist", "--curve", "0;-2*u^3+4;0;u^6;0", "--d", "u"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "0;-2*u^4+4*u;0;u^8;0");
}
