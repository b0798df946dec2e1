use std::process::{Command, Output};

use serde_json::Value;

fn k3lat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3lat")).args(args).env("K3LAT_THREADS", "1").output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().expect("object").remove("timing");
    v
}

#[test]
fn lattice_default_passes() {
    let out = k3lat(&["lattice"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    let h = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "h_perp_root_type").unwrap();
    assert_eq!(h["witness"]["root_type"], "4D4+5A1");
    let s = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "overlattice_sigma2").unwrap();
    assert_eq!(s["witness"]["summary"]["sigma"], 2);
}

#[test]
fn extra_glue_and_text_format() {
    let out = k3lat(&["lattice", "--with-extra-glue", "w", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS overlattice_extra_glue: index 64, det -4"));
    assert!(text.contains("sigma 1"));
    assert!(!text.contains("FAIL "));
}

#[test]
fn corrupt_glue_exits_one() {
    let out = k3lat(&["lattice", "--inject-corrupt-glue"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    let c = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "overlattice_sigma2").unwrap();
    assert_eq!(c["passed"], false);
    assert!(c["witness"]["glue_vectors"].is_array());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(k3lat(&["surface", "--r", "1"]).status.code(), Some(2));
    assert_eq!(k3lat(&["surface", "--r", "0", "--s", "1"]).status.code(), Some(2));
    assert_eq!(k3lat(&["surface", "--k", "3"]).status.code(), Some(2));
    assert_eq!(k3lat(&["bogus"]).status.code(), Some(2));
    assert_eq!(k3lat(&["lattice", "--with-extra-glue", "7"]).status.code(), Some(2));
}

#[test]
fn surface_with_equal_cubes_reports_extra_line() {
    let out = k3lat(&["surface", "--k", "4", "--r", "1", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let s = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "surface").unwrap();
    assert_eq!(s["witness"]["configuration"]["extra_line_splits"], true);
}

#[test]
fn seeded_runs_are_deterministic() {
    let args = ["surface", "--k", "8", "--samples", "3", "--seed", "5"];
    let a = strip_timing(json_of(&k3lat(&args)));
    let b = strip_timing(json_of(&k3lat(&args)));
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let c = strip_timing(json_of(&k3lat(&["surface", "--k", "8", "--samples", "3", "--seed", "6"])));
    assert_ne!(a, c);
}

#[test]
fn recognize_from_file_and_out_path() {
    let dir = std::env::temp_dir().join(format!("k3lat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // xyz(t²yz² + xz² + y³ + x³) over GF(2^8) with t = 0x1d, so t² = 0x4c.
    let poly = serde_json::json!({
        "field": { "k": 8, "modulus_bits": "100011101" },
        "degree": 6,
        "terms": [
            { "exp": [1, 4, 1], "coeff": "00000001" },
            { "exp": [1, 2, 3], "coeff": "01001100" },
            { "exp": [4, 1, 1], "coeff": "00000001" },
            { "exp": [2, 1, 3], "coeff": "00000001" }
        ]
    });
    let input = dir.join("y.json");
    std::fs::write(&input, poly.to_string()).unwrap();
    let report = dir.join("report.json");
    let out = k3lat(&["surface", "--recognize", input.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let c = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "recognize_input").unwrap();
    assert_eq!(c["witness"]["recognition"]["t"], "0x1d");
    assert_eq!(c["witness"]["recognition"]["identity_frame"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn all_passes() {
    let out = k3lat(&["all", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0 failed: PASS"));
}
