use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn starlab(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_starlab"));
    cmd.args(args).env_remove("STARLAB_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("STARLAB_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn sgp_info() {
    let out = starlab(&["sgp", "info", "--gens", "4,5,7"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let s = &v["results"]["semigroup"];
    assert_eq!(s["frobenius"], 6);
    assert_eq!(s["tau"], 3);
    assert_eq!(s["multiplicity"], 4);
    assert_eq!(s["pseudo_symmetric"], true);
    assert_eq!(s["canonical_ideal"], serde_json::json!([0, 3, 4, 5]));
    assert_eq!(s["nongor_witnesses"], serde_json::json!([3, 2]));
    assert_eq!(v["results"]["gate"]["passed"], true);

    let v = json(&starlab(&["sgp", "info", "--gens", "2,3"], None));
    assert_eq!(v["results"]["semigroup"]["symmetric"], true);
    assert_eq!(v["results"]["semigroup"]["pseudo_symmetric"], false);
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["sgp", "info", "--gens", "4,6"][..],
        &["sgp", "info", "--gens", "1"],
        &["sgp", "info", "--gens", "4,x"],
        &["ring", "enum-stars", "--gens", "4,5,7", "--q", "6"],
        &["ring", "enum-stars", "--gens", "4,5,7", "--q", "4", "--field-poly", "1,0,1"],
        &["ring", "enum-stars", "--gens", "4,5,7", "--q", "4", "--field-poly", "1,1,1,1"],
        &["ring", "enum-stars", "--gens", "4,5,7", "--jobs", "0"],
        &["kunz", "lemmas", "--gens", "4,5,7", "--n", "4"],
        &["nonsense"],
    ] {
        let out = starlab(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn gate_and_budget_exit_codes() {
    let out = starlab(&["kunz", "counterexample", "--gens", "3,4,5"], None);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gate"));
    let out = starlab(&["kunz", "formula-check", "--gens", "5,6,7,9"], None);
    assert_eq!(out.status.code(), Some(4));
    let out = starlab(&["ring", "enum-stars", "--gens", "4,5,7", "--q", "3", "--max-orbits", "5"], None);
    assert_eq!(out.status.code(), Some(3));
    let out = starlab(&["ring", "enum-ideals", "--gens", "4,5,7", "--q", "3", "--max-ideals", "10"], None);
    assert_eq!(out.status.code(), Some(3));
    // over budget the counterexample still reports, with the certificate
    let out = starlab(&["kunz", "counterexample", "--n", "5", "--max-orbits", "8"], None);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdicts"]["lower_bound_certificate"], "verified");
}

#[test]
fn enum_stars_counts_and_tags() {
    let v = json(&starlab(&["ring", "enum-stars", "--gens", "4,5,7", "--q", "2"], None));
    assert_eq!(v["results"]["count"], 19);
    let fams = v["results"]["families"].as_array().unwrap();
    assert_eq!(fams.len(), 19);
    let tagged = |t: &str| fams.iter().filter(|f| f["tag"] == t).count();
    assert_eq!((tagged("d"), tagged("v"), tagged("delta-minus-canonical"), tagged("lambda-plus-t")), (1, 1, 1, 16));
    let v = json(&starlab(&["ring", "enum-stars", "--gens", "4,5,6,7", "--q", "2"], None));
    assert_eq!(v["results"]["count"], 42);
    let v = json(&starlab(&["ring", "enum-ideals", "--gens", "4,5,7", "--q", "3"], None));
    assert_eq!(v["results"]["f0"], 32);
    assert_eq!(v["results"]["orbits"], 14);
    assert_eq!(v["results"]["canonical"], 3);
}

#[test]
fn explicit_modulus() {
    let out = starlab(&["ring", "enum-stars", "--gens", "4,5,7", "--q", "4", "--field-poly", "1,1,1"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["count"], 259);
    assert_eq!(v["input"]["field_poly"], serde_json::json!([1, 1, 1]));
}

#[test]
fn kunz_commands() {
    let out = starlab(&["kunz", "lower-bound", "--n", "5", "--q", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["lower_bound"]["formula_bound"], "128");
    let out = starlab(&["kunz", "subspace-orbits", "--n", "4", "--q", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["lab"]["classes"], 6);
    let out = starlab(&["kunz", "formula-check", "--gens", "4,5,7", "--q", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let out = starlab(&["kunz", "lemmas", "--n", "4", "--q", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    // the ⋆_i for the residue 0 closes (R : M_R)
    let out = starlab(&["kunz", "counterexample", "--gens", "4,5,7", "--q", "2"], None);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdicts"]["star_r_lt_star_t"], "verified");
    assert_eq!(v["verdicts"]["stari.none_close_r_colon_m"], "failed");
}

#[test]
fn output_formats() {
    let out = starlab(&["ring", "enum-stars", "--gens", "4,5,7", "--out", "csv"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("section,key,value\r\n"));
    assert!(text.contains("results,count,19\r\n"));
    assert!(!text.contains("families"));
    let out = starlab(&["ring", "enum-stars", "--gens", "4,5,7", "--out", "md"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| count | 19 |"));
}

#[test]
fn timings_only_on_request() {
    let v = json(&starlab(&["ring", "enum-stars", "--gens", "4,5,7"], None));
    assert_eq!(v["timings_ms"], serde_json::json!({}));
    let v = json(&starlab(&["ring", "enum-stars", "--gens", "4,5,7", "--timings"], None));
    assert!(v["timings_ms"].as_object().unwrap().contains_key("enumerate"));
}

#[test]
fn cache_is_reused_and_output_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["kunz", "counterexample", "--gens", "4,5,7", "--q", "3"];
    let plain = starlab(&args, None);
    let first = starlab(&args, Some(dir.path()));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 2, "{files:?}");
    let second = starlab(&args, Some(dir.path()));
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);

    // a corrupted entry is ignored and rewritten
    for f in &files {
        std::fs::write(dir.path().join(f), "{").unwrap();
    }
    let third = starlab(&args, Some(dir.path()));
    assert_eq!(third.stdout, plain.stdout);
    let flag = starlab(&["--cache-dir", dir.path().to_str().unwrap(), "ring", "enum-stars", "--gens", "4,5,7", "--q", "3"], None);
    assert_eq!(json(&flag)["results"]["count"], 67);
}
