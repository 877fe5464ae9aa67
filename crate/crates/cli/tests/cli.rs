use std::process::{Command, Output};

use serde_json::Value;

fn cremona(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cremona")).args(args).env_remove("CREMONA_TERM_CAP").output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn henon_is_loxodromic() {
    let o = cremona(&["classify", "--map", "(x,y)->(y, y^2 - x)", "--iters", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["class"], "Loxodromic");
    assert!((v["lambda"].as_f64().unwrap() - 2.0).abs() < 1e-6);
}

#[test]
fn term_cap_truncates_with_flagged_json() {
    let o = Command::new(env!("CARGO_BIN_EXE_cremona"))
        .args(["classify", "--map", "(x,y)->(y, y^2 - x)", "--iters", "10"])
        .env("CREMONA_TERM_CAP", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["truncated"], true);
    assert_eq!(v["term_cap"], 20);
    assert!(v["degrees"].as_array().unwrap().len() < 10);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["classify"],
        vec!["classify", "--map", "(x,y) -> (x/0, y)"],
        vec!["classify", "--map", "(x,y) -> (x", "--bogus"],
        vec!["gallery", "verify", "--row", "15", "--param", "b=3/4", "--param", "a=1/2"],
        vec!["gallery", "verify", "--row", "12", "--param", "M=1"],
        vec!["limitset", "--schottky", "0,2;1,2"],
        vec!["toric", "--matrix", "2,0,0,1"],
    ] {
        let o = cremona(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(cremona(&["--help"]).status.code(), Some(0));
}

#[test]
fn zero_denominator_is_reported() {
    let o = cremona(&["classify", "--map", "(x,y) -> (x/0, y)"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero denominator"));
}

#[test]
fn failed_verification_exits_four() {
    let o = cremona(&["invert-check", "--f", "(x,y) -> (y, y^2 - x)", "--g", "(x,y) -> (y, x)"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(json(&o)["inverse"], false);
    let o = cremona(&["gallery", "verify", "--row", "7", "--param", "vectors=1,0;2,0;0,1;0,i"]);
    assert_eq!(o.status.code(), Some(4));
    let v = json(&o);
    assert_eq!(v["reports"][0]["lattice_rank"]["rank"], 3);
}

#[test]
fn inverse_of_henon() {
    let o = cremona(&["invert-check", "--f", "(x,y) -> (y, y^2 - x)", "--g", "(x,y) -> (x^2 - y, x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["inverse"], true);
}

#[test]
fn compose_reports_saturated_degree() {
    let sigma = "[x0:x1:x2] -> [x1*x2 : x0*x2 : x0*x1]";
    let v = json(&cremona(&["compose", "--f", sigma, "--g", sigma]));
    assert_eq!(v["result"]["degree"], 1);
    assert_eq!(v["result"]["model"], "p2");
    assert_eq!(v["result"]["components"], serde_json::json!(["x0", "x1", "x2"]));
}

#[test]
fn centralizer_verdicts() {
    let f = "(x,y) -> (2*x, 3*y)";
    let v = json(&cremona(&["centralizer", "--f", f, "--g", "(x,y) -> (5x, 7y)"]));
    assert_eq!(v["member"], true);
    let v = json(&cremona(&["centralizer", "--f", f, "--g", "(x,y) -> (x, (x^2+1) y)"]));
    assert_eq!(v["member"], false);
    assert!(v["witness"].is_string());
    let v = json(&cremona(&["centralizer", "--f", "(x,y) -> (i x, 3y)", "--g", "(x,y) -> (x, x^4 y)"]));
    assert_eq!(v["normal_form"]["k"], 4);
    assert_eq!(v["member"], true);
}

#[test]
fn cyclic_orbit() {
    let o = cremona(&["orbit", "--moebius", "2,0,0,1", "--point", "1", "--length", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let mut xs: Vec<f64> = json(&o)["points"].as_array().unwrap().iter().map(|p| p[0].as_f64().unwrap()).collect();
    xs.sort_by(f64::total_cmp);
    assert_eq!(xs, [0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0]);
    let o = cremona(&["orbit", "--moebius", "2,0,0,1", "--point", "1", "--length", "10", "--cap", "5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn limitset_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let (ppm, csv, out) = (dir.path().join("a.ppm"), dir.path().join("a.csv"), dir.path().join("a.json"));
    let o = cremona(&[
        "limitset",
        "--schottky",
        "3,1;-3,1|3i,1;-3i,1",
        "--budget",
        "500",
        "--size",
        "64",
        "--render",
        ppm.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["inside_disks"], true);
    assert_eq!(v["discreteness_proxy"]["passed"], true);
    let img = std::fs::read(&ppm).unwrap();
    assert!(img.starts_with(b"P6\n64 64\n255\n"));
    assert_eq!(img.len(), 13 + 64 * 64 * 3);
    let table = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().count(), 1 + v["count"].as_u64().unwrap() as usize);
}

#[test]
fn toric_golden_map() {
    let v = json(&cremona(&["toric", "--matrix", "2,1,1,1"]));
    assert_eq!(v["class"], "Loxodromic");
    assert_eq!(v["logform_scalar"], 1);
    assert_eq!(v["spectral_radius"]["exact"], "(3+sqrt(5))/2");
    let v = json(&cremona(&["toric", "--matrix", "1,1,0,1", "--alpha", "2"]));
    assert_eq!(v["class"], "JonquieresTwist");
}

#[test]
fn catalog_lists_twenty_rows() {
    let v = json(&cremona(&["gallery", "list"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert_eq!(rows.iter().filter(|r| r["status"] == "constructible").count(), 12);
    assert_eq!(rows[14]["defaults"]["b"], "1/2");
    assert!(rows[0]["defaults"].is_null());
}

#[test]
fn config_file_sets_params_and_sampling() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"gallery": {"15": {"a": 5, "b": "1/3"}}, "verify": {"sample_count": 40, "word_length": 4}}"#)
        .unwrap();
    let o = cremona(&["gallery", "verify", "--row", "15", "--config", cfg.to_str().unwrap(), "--length", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json(&o)["reports"][0];
    assert_eq!(r["params"]["a"], "5");
    assert_eq!(r["config"]["sample_count"], 40);
    assert_eq!(r["config"]["word_length"], 5);
}

#[test]
fn swapped_case_still_passes() {
    let o = cremona(&["gallery", "verify", "--row", "9", "--swap"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["reports"][0]["swapped"], true);
}
