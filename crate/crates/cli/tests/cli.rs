use std::process::{Command, Output};

use serde_json::Value;

fn linres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linres"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const J: &str = "x^3, x^2y, xy^2, y^3, x^2z, y^2z";
const PINCHED: &str = "x^3, x^2y, xy^2, y^3, x^2z, y^2z, xz^2, yz^2, z^3";

#[test]
fn check_reports_linear_resolution() {
    let out = linres(&["check", "--ideal", J]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["linear_resolution"], true);
    assert_eq!(v["witness"]["kind"], "linear");
}

#[test]
fn strict_check_fails_with_witness() {
    let out = linres(&["check", "--strict", "--ideal", PINCHED]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["linear_resolution"], false);
    assert_eq!(v["linearly_presented"], true);
    assert_eq!(v["witness"]["kind"], "bad_configuration");
    assert_eq!(v["witness"]["inducer"], "xyz");

    let lenient = linres(&["check", "--ideal", PINCHED]);
    assert_eq!(lenient.status.code(), Some(0));
}

#[test]
fn order_lists_the_tree_order() {
    let out = linres(&[
        "order",
        "--search",
        "--ideal",
        "x^3,x^2y,x^2z,xy^2,xyz,xz^2,y^3,y^2z,yz^2,z^3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let order: Vec<&str> = v["tree_order"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap())
        .collect();
    assert_eq!(
        order,
        ["x^3", "x^2y", "xy^2", "y^3", "x^2z", "xyz", "y^2z", "xz^2", "yz^2", "z^3"]
    );
    assert_eq!(v["linear_quotients"], true);
    assert!(v["search"].is_array());
}

#[test]
fn order_refuses_disconnected_ideals() {
    let out = linres(&["order", "--ideal", "x^3, z^3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not linearly presented"));
}

#[test]
fn betti_and_power_use_the_oracle() {
    let out = linres(&["betti", "--ideal", PINCHED, "--char", "0", "--char", "2"]);
    let v = json(&out);
    let tables = v["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 2);
    for t in tables {
        assert_eq!(t["regularity"], 4);
        assert_eq!(t["hilbert_consistent"], true);
    }

    let v = json(&linres(&["power", "--ideal", J, "--powers", "3"]));
    let regs: Vec<i64> = v["powers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["oracle"][0]["regularity"].as_i64().unwrap())
        .collect();
    assert_eq!(regs, [3, 6, 9]);
}

#[test]
fn socle_reports_bad_configuration() {
    let v = json(&linres(&["socle", "--ideal", PINCHED]));
    assert_eq!(v["socle"], serde_json::json!(["x^2", "y^2", "z^2", "xyz"]));
    assert_eq!(
        v["back_twists"][0]["socle_degrees"],
        serde_json::json!([2, 2, 2, 3])
    );
    assert_eq!(v["bad_configuration"]["inducer"], "xyz");
}

#[test]
fn render_is_deterministic() {
    for format in ["svg", "dot"] {
        let a = linres(&["render", "--format", format, "--ideal", J]);
        let b = linres(&["render", "--format", format, "--ideal", J]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let svg = String::from_utf8(linres(&["render", "--ideal", J]).stdout).unwrap();
    assert_eq!(svg.matches("fill=\"blue\"/>").count(), 6);
    assert_eq!(svg.matches("fill=\"red\"/>").count(), 4);
    let layout = json(&linres(&["render", "--format", "json", "--ideal", PINCHED]));
    assert_eq!(layout["edges"].as_array().unwrap().len(), 18);
}

#[test]
fn sweep_reports_no_mismatches() {
    let out = linres(&[
        "sweep", "--degree", "2", "--powers", "3", "--char", "0", "--char", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.starts_with("{\"degree\":2,\"mode\":{\"kind\":\"exhaustive\"},\"population\":63,"));
    let v = json(&out);
    assert_eq!(v["mismatches"], serde_json::json!([]));
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn sampled_sweeps_are_reproducible() {
    let args = [
        "sweep",
        "--degree",
        "5",
        "--mode",
        "sample",
        "--samples",
        "40",
        "--seed",
        "3",
        "--powers",
        "1",
    ];
    let a = linres(&args);
    let b = linres(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["population"], 40);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(linres(&["check", "--ideal", "x^0"]).status.code(), Some(2));
    assert_eq!(
        linres(&["check", "--ideal", "x^2, y"]).status.code(),
        Some(2)
    );
    assert_eq!(linres(&["check"]).status.code(), Some(2));
    assert_eq!(linres(&["sweep", "--degree", "6"]).status.code(), Some(2));
    assert_eq!(
        linres(&["betti", "--ideal", "x", "--char", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn ideals_load_from_files_with_warnings() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("ideal.txt");
    std::fs::write(&path, "x^2\nxy\nx^2y\n").unwrap();
    let out = linres(&["check", "--ideal", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ideal"], serde_json::json!(["x^2", "xy"]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-minimal generator x^2y"));
}

#[test]
fn reisner_depends_on_characteristic() {
    let v = json(&linres(&["reisner"]));
    let regs: Vec<i64> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["regularity"].as_i64().unwrap())
        .collect();
    assert_eq!(regs, [3, 4, 3]);
}

#[test]
fn pretty_output_is_text() {
    let out = linres(&["check", "--pretty", "--ideal", PINCHED]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bad configuration induced by xyz"));
}
