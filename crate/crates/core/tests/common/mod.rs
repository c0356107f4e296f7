//! Reference implementations written directly from the definitions, sharing
//! no code with the library.
#![allow(dead_code)]

pub mod checks;
pub mod corpus;

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;

pub type V = Vec<u64>;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn fixture(name: &str) -> PathBuf {
    data_dir().join("fixtures").join(name)
}

fn below(x: &[u64], h: &[u64]) -> bool {
    x.iter().zip(h).all(|(a, b)| a < b)
}

/// `{a + b : a ∈ A, b ∈ B, a + b < cap}`.
fn capped_sum(a: &HashSet<V>, b: &HashSet<V>, cap: &[u64]) -> HashSet<V> {
    let mut out = HashSet::new();
    for x in a {
        for y in b {
            let s: V = x.iter().zip(y).map(|(p, q)| p + q).collect();
            if below(&s, cap) {
                out.insert(s);
            }
        }
    }
    out
}

/// The general recursion with literal sets. `None` when `max_stages` runs out.
pub fn naive_general(h: &[u64], max_stages: usize) -> Option<bool> {
    let n = h.len();
    let mut pools: Vec<HashSet<V>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            HashSet::from([e])
        })
        .collect();
    let zero = vec![0u64; n];
    for _ in 0..max_stages {
        let mut s = pools[0].iter().filter(|x| below(x, h)).cloned().collect::<HashSet<V>>();
        for p in &pools[1..] {
            s = capped_sum(&s, p, h);
        }
        let mut changed = false;
        for (i, pool) in pools.iter_mut().enumerate() {
            for x in &s {
                let mut z = x.clone();
                z[i] = 0;
                changed |= pool.insert(z);
            }
        }
        if pools.iter().any(|p| p.contains(&zero)) {
            return Some(true);
        }
        if !changed {
            return Some(false);
        }
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The constant recursion with literal sets: `x = 1̄_{n∖k} + Σ^k set`, `x < c`,
/// last coordinate zeroed, all permutations.
pub fn naive_const(c: u64, n: usize, max_stages: usize) -> Option<bool> {
    let perms = permutations(n);
    let cap = vec![c; n];
    let zero = vec![0u64; n];
    let mut set: HashSet<V> = HashSet::new();
    for _ in 0..max_stages {
        let mut fresh = Vec::new();
        let mut sums: HashSet<V> = HashSet::from([vec![0; n]]);
        for k in 0..n {
            for s in &sums {
                let x: V = (0..n).map(|i| s[i] + u64::from(i >= k)).collect();
                if below(&x, &cap) {
                    let mut z = x.clone();
                    z[n - 1] = 0;
                    for p in &perms {
                        fresh.push(p.iter().map(|&j| z[j]).collect::<V>());
                    }
                }
            }
            sums = capped_sum(&sums, &set, &cap);
        }
        let before = set.len();
        set.extend(fresh);
        if set.contains(&zero) {
            return Some(true);
        }
        if set.len() == before {
            return Some(false);
        }
    }
    None
}

/// `min_σ Σ λ^i f(σ(i))` by enumeration.
pub fn brute_weight(f: &[u64], lambda: f64) -> f64 {
    permutations(f.len())
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &j)| lambda.powi(i as i32) * f[j] as f64).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// All non-decreasing vectors of length `n` with entries in `lo..=hi`.
pub fn monotone_box(n: usize, lo: u64, hi: u64) -> Vec<V> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for v in monotone_box(n - 1, lo, hi) {
        let start = v.last().copied().unwrap_or(lo);
        for x in start..=hi {
            let mut w = v.clone();
            w.push(x);
            out.push(w);
        }
    }
    out
}

/// `Σ 1/x(i) < n/t` with `t = p/q`, in integers.
pub fn harmonic_above(x: &[u64], p: u64, q: u64) -> bool {
    // Σ 1/x < n q / p  ⇔  p Σ_i Π_{j≠i} x(j) < n q Π x
    let prod: u128 = x.iter().map(|&v| v as u128).product();
    let s: u128 = x.iter().map(|&v| prod / v as u128).sum();
    (p as u128) * s < (x.len() as u128) * (q as u128) * prod
}

pub fn sorted_set(v: impl IntoIterator<Item = V>) -> BTreeSet<V> {
    v.into_iter().collect()
}
