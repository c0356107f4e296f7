mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use zerogen::certificates::{cert_from_json, load_cert, verify};

fn zerogen(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_zerogen"));
    c.args(args);
    match cache {
        Some(d) => c.env("ZEROGEN_CACHE_DIR", d),
        None => c.env_remove("ZEROGEN_CACHE_DIR"),
    };
    c.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("zerogen-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn decide_exit_codes() {
    let d = tmp("decide");
    let cert = d.join("out.json");
    let o = zerogen(&["decide", "2,3,7", "--emit-cert", cert.to_str().unwrap()], None);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(verify(&load_cert(&cert).unwrap()).passed);
    assert_eq!(code(&zerogen(&["decide", "9,9,9,9,10"], None)), 1);
    assert_eq!(code(&zerogen(&["decide", "0,5"], None)), 1);
    assert_eq!(code(&zerogen(&["decide", "6,6,6,6,6,6", "--max-tuples", "100"], None)), 2);
    for bad in [vec!["decide", "2,x"], vec!["decide"], vec!["decide", "1,2", "--mode", "fast"], vec!["nonsense"]] {
        assert!(code(&zerogen(&bad, None)) >= 10, "{bad:?}");
    }
    let o = zerogen(&["decide", "3,3,3", "--cross-check", "--format", "json"], None);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["outcome"], "not_generating");
}

#[test]
fn verify_reports() {
    let ok = common::fixture("table_11.json");
    let o = zerogen(&["verify", ok.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(code(&zerogen(&["verify", common::fixture("m4_invariant.json").to_str().unwrap()], None)), 0);

    let d = tmp("verify");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&ok).unwrap()).unwrap();
    v["rows"][2]["sum"][1] = Value::from(2);
    let bad = d.join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = zerogen(&["verify", bad.to_str().unwrap()], None);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL  row 2"), "{}", stdout(&o));

    let o = zerogen(&["verify", common::fixture("table_23.json").to_str().unwrap(), "--format", "csv"], None);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).lines().any(|l| l.starts_with("46,") && l.contains("false")));

    let garbage = d.join("garbage.json");
    std::fs::write(&garbage, "{\"type\": \"const_witness\", \"n\": 2, \"hbar\": 3, \"steps\": [{\"f\": 1}]}").unwrap();
    let o = zerogen(&["verify", garbage.to_str().unwrap()], None);
    assert_eq!(code(&o), 12);
    assert!(String::from_utf8_lossy(&o.stderr).contains("steps[0].f"));
}

#[test]
fn sinf_with_certificates_and_manifest() {
    let d = tmp("sinf");
    let o = zerogen(&["sinf", "4", "--cert-dir", d.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("s_inf(4) = 5"), "{out}");
    for name in ["sinf_n4_c5_nongen.json", "sinf_n4_c6_witness.json"] {
        assert!(out.contains(name));
        assert!(verify(&load_cert(&d.join(name)).unwrap()).passed);
    }
    let m = d.join("sinf_n4_manifest.json");
    assert_eq!(code(&zerogen(&["verify", m.to_str().unwrap()], None)), 0);

    let o = zerogen(&["sinf", "7"], None);
    assert_eq!(code(&o), 11);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--allow-long"));
}

#[test]
fn manifests_tie_verdicts_to_certificates() {
    let d = tmp("manifest");
    let batch = d.join("batch.txt");
    std::fs::write(&batch, "# vectors\n2,3,7\n3,3,3\n2,2,5\n1\n").unwrap();
    let m = d.join("run.json");
    let o = zerogen(&["decide", "--batch", batch.to_str().unwrap(), "--manifest", m.to_str().unwrap()], None);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = zerogen(&["verify", m.to_str().unwrap()], None);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let certs: Vec<_> = std::fs::read_dir(d.join("certs")).unwrap().collect();
    assert_eq!(certs.len(), 4);
    let victim = d.join("certs/cert_3_3_3.json");
    let t = std::fs::read_to_string(&victim).unwrap().replace("\"hbar\": 3", "\"hbar\": 4");
    std::fs::write(&victim, t).unwrap();
    assert_eq!(code(&zerogen(&["verify", m.to_str().unwrap()], None)), 1);
}

#[test]
fn cache_is_coherent() {
    use rand::{Rng, SeedableRng};
    let d = tmp("cache");
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let vectors: Vec<String> = (0..100)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            (0..n).map(|_| rng.gen_range(1..=6u64).to_string()).collect::<Vec<_>>().join(",")
        })
        .collect();
    let batch = d.join("b.txt");
    std::fs::write(&batch, vectors.join("\n")).unwrap();
    let cache = d.join("cache");
    let first = zerogen(&["--format", "json", "decide", "--batch", batch.to_str().unwrap()], Some(&cache));
    assert!(cache.join("verdicts.json").exists());
    let second = zerogen(&["--format", "json", "decide", "--batch", batch.to_str().unwrap()], Some(&cache));
    let fresh = zerogen(&["--format", "json", "decide", "--batch", batch.to_str().unwrap(), "--no-cache"], Some(&cache));
    let parse = |o: &Output| -> Vec<Value> { serde_json::from_str(&stdout(o)).unwrap() };
    let (a, b, c) = (parse(&first), parse(&second), parse(&fresh));
    assert_eq!(a.len(), 100);
    for i in 0..100 {
        assert_eq!(b[i]["cached"], true);
        assert_eq!(c[i]["verdict"]["outcome"], b[i]["verdict"]["outcome"], "{}", vectors[i]);
        assert_eq!(a[i]["verdict"]["outcome"], b[i]["verdict"]["outcome"]);
    }
}

#[test]
fn tables_and_analysis_commands() {
    let o = zerogen(&["tables", "2", "--format", "csv"], None);
    assert_eq!(code(&o), 0);
    let col: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect();
    assert_eq!(col, ["0", "0", "0", "1/5", "41/90", "13/19", "5/6", "57/61"]);

    let o = zerogen(&["weights", "6", "--format", "json"], None);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["params"]["lambda"].as_f64().unwrap() - 2.34).abs() < 0.01);
    assert!((v["table_row"]["c_lambda_rounded"].as_f64().unwrap() - 14.24).abs() <= 0.01 + 1e-9);

    let o = zerogen(&["tables", "1", "--format", "json"], None);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let known: Vec<&str> = v["discrepancies"].as_array().unwrap().iter().map(|d| d["known"].as_str().unwrap()).collect();
    assert_eq!(known, ["table1-factorial"; 3]);

    let o = zerogen(&["phi", "8", "--int"], None);
    assert!(stdout(&o).contains("varphi(8) = 121"));
    let o = zerogen(&["bounds", "60"], None);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("sandwich: holds"));
    let o = zerogen(&["frontier", "3", "3"], None);
    assert!(stdout(&o).contains("(2,3,7)") && stdout(&o).contains("3 vectors"));
    assert_eq!(code(&zerogen(&["net", "3", "3"], None)), 0);
    assert_eq!(code(&zerogen(&["net", "3", "5/2"], None)), 1);
}

#[test]
fn json_output_round_trips() {
    let o = zerogen(&["shift-witness", "4", "--format", "json"], None);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cert = cert_from_json(&v["certificate"].to_string()).unwrap();
    assert!(verify(&cert).passed);
    assert_eq!(cert.hbar().get(0), 8);
    let o = zerogen(&["frontier", "3", "3", "--format", "json"], None);
    let f: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(f["minimal"].as_array().unwrap().len(), 3);
}
