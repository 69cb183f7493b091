use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heightlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn envelope_shape() {
    let v = json(&["curve-info", "--curve", "1,0"]);
    assert_eq!(v["schema"], "heightlab/1");
    assert_eq!(v["kind"], "curve-info");
    assert_eq!(v["config"]["precision_bits"], 128);
    assert_eq!(v["data"]["j"], "1728/1");
}

#[test]
fn reduction_at_a_prime() {
    let v = json(&["curve-info", "--curve-long", "0,0,1,-1,0", "--prime", "37"]);
    let s = v.to_string();
    assert!(s.contains("MultNonsplit"), "{s}");
}

#[test]
fn height_of_torsion_point_is_zero() {
    // (2, 3) has order 6 on y^2 = x^3 + 1
    let v = json(&["height", "--curve", "0,1", "--point", "2,3"]);
    let h = v["data"]["canonical_height"]["value"].as_f64().unwrap();
    assert!(h.abs() < 1e-12, "{h}");
}

#[test]
fn lattes_ratio_is_two() {
    let v = json(&["height", "--curve-long", "0,0,1,-1,0", "--point", "0,0", "--lattes"]);
    let r = v["data"]["ratio"].as_f64().unwrap();
    assert!((r - 2.0).abs() < 1e-6, "{r}");
}

#[test]
fn off_curve_point_is_input_error() {
    let out = run(&["height", "--curve", "0,1", "--point", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn low_precision_rejected() {
    let out = run(&["--precision-bits", "32", "curve-info", "--curve", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn counterexample_tower() {
    let v = json(&["counterexample", "--prime", "5", "--levels", "4"]);
    let levels = v["data"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 5);
    for (n, l) in levels.iter().enumerate() {
        assert_eq!(l["degree"], 4u64.pow(n as u32));
        assert_eq!(l["hf_ratio"], format!("1/{}", 4u64.pow(n as u32)));
        assert_eq!(l["certificate"], "Unramified");
    }
}

#[test]
fn bound_variants_relate() {
    let b41 = json(&["bound", "--variant", "41", "--curve-long", "0,1,1,-7,5", "--p", "7"]);
    let b42 = json(&["bound", "--variant", "42", "--curve-long", "0,1,1,-7,5", "--p", "7"]);
    let h41 = b41["data"]["height_bound"]["value"].as_f64().unwrap();
    let h42 = b42["data"]["height_bound"]["value"].as_f64().unwrap();
    assert!(h41 > 0.0);
    assert!((h41 / h42 - 2.0).abs() < 1e-9, "{h41} {h42}");
}

#[test]
fn unknown_variant_is_input_error() {
    let out = run(&["bound", "--variant", "99", "--hj", "1", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_bounds_suite() {
    let out = run(&["verify", "--suite", "bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("criterion 12 PASS"), "{err}");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["passed"], true);
}

#[test]
fn csv_output_has_header_and_rows() {
    let out = run(&["--output", "csv", "counterexample", "--prime", "7", "--levels", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].contains("hf_ratio"));
    assert!(lines[3].contains("1/16"));
}

#[test]
fn out_file_written() {
    let dir = std::env::temp_dir().join(format!("heightlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ci.json");
    let out = run(&["--out", path.to_str().unwrap(), "curve-info", "--curve", "0,1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["data"]["j"], "0/1");
    std::fs::remove_dir_all(&dir).ok();
}
