//! The fixture corpus and its single-entry mutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;

use rand::Rng;
use serde_json::Value;
use zerogen::certificates::{cert_from_json, verify};
use zerogen::extremal::ReferenceValues;

pub fn all_fixtures() -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(super::data_dir().join("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .collect();
    v.sort();
    v
}

/// Fixture name → zero-based items expected to fail.
pub fn known_bad() -> BTreeMap<String, BTreeSet<usize>> {
    let mut m: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for d in ReferenceValues::embedded().certificate_discrepancies() {
        m.entry(d.fixture.clone().unwrap()).or_default().insert(d.item.unwrap());
    }
    m
}

/// Paths to integer leaves that carry certificate content.
fn leaves(v: &Value, path: Vec<String>, out: &mut Vec<Vec<String>>) {
    const SKIP: [&str; 8] = ["meta", "hbar", "refs", "sigma", "label", "version", "n", "type"];
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if SKIP.contains(&k.as_str()) {
                    continue;
                }
                let mut p = path.clone();
                p.push(k.clone());
                leaves(x, p, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                let mut p = path.clone();
                p.push(i.to_string());
                leaves(x, p, out);
            }
        }
        Value::Number(_) => out.push(path),
        _ => {}
    }
}

fn at<'a>(v: &'a mut Value, path: &[String]) -> &'a mut Value {
    path.iter().fold(v, |v, k| match v {
        Value::Object(m) => m.get_mut(k).unwrap(),
        Value::Array(a) => &mut a[k.parse::<usize>().unwrap()],
        _ => unreachable!(),
    })
}

/// Apply `count` random ±1/±2 edits, one at a time, and list those the verifier accepts.
pub fn mutation_survivors(name: &str, count: usize, rng: &mut impl Rng) -> Vec<String> {
    let text = fs::read_to_string(super::fixture(name)).unwrap();
    let orig: Value = serde_json::from_str(&text).unwrap();
    let mut paths = Vec::new();
    leaves(&orig, vec![], &mut paths);
    assert!(!paths.is_empty(), "{name}: nothing to mutate");
    let mut survivors = Vec::new();
    for _ in 0..count {
        let p = &paths[rng.gen_range(0..paths.len())];
        let mut m = orig.clone();
        let slot = at(&mut m, p);
        let old = slot.as_u64().unwrap();
        let new = loop {
            let d: i64 = rng.gen_range(-2..=2);
            let x = old as i64 + d;
            if d != 0 && x >= 0 {
                break x as u64;
            }
        };
        *slot = Value::from(new);
        if cert_from_json(&m.to_string()).map(|c| verify(&c).passed).unwrap_or(false) {
            survivors.push(format!("{}: {old} -> {new}", p.join(".")));
        }
    }
    survivors
}
