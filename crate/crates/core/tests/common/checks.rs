//! Sampled property checks shared by the test targets. Each returns a
//! summary on success and the first counterexample on failure.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use zerogen::analysis::weight;
use zerogen::nvec::{all_permutations, harmonic_mean, mean, MeanDegree};
use zerogen::{decide, decide_const, decide_general, DecideOptions, Mode, NatVec};

pub type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn positive(rng: &mut StdRng, n: usize, hi: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..=hi)).collect()
}

/// Full, Antichain, the general recursion and the literal oracle on every constant.
pub fn constants_agree(n_max: usize, c_max: u64) -> Check {
    let mut count = 0;
    for n in 1..=n_max {
        for c in 1..=c_max {
            let full = decide_const(c, n, &DecideOptions::default().with_mode(Mode::Full)).map_err(|e| e.to_string())?.verdict;
            let anti = decide_const(c, n, &DecideOptions::default()).map_err(|e| e.to_string())?.verdict;
            let gen = decide_general(&NatVec::constant(n, c), &DecideOptions::default()).map_err(|e| e.to_string())?.verdict;
            let naive = super::naive_const(c, n, 10_000).ok_or(format!("oracle ran out at n={n} c={c}"))?;
            ensure(full.same_outcome(&anti), || format!("n={n} c={c}: {full} vs {anti}"))?;
            ensure(full.same_outcome(&gen), || format!("n={n} c={c}: {full} vs general {gen}"))?;
            ensure(full.is_generating() == naive, || format!("n={n} c={c}: engine {full}, oracle {naive}"))?;
            if n <= 3 || c <= 5 {
                let ng = super::naive_general(&vec![c; n], 10_000).ok_or("oracle ran out")?;
                ensure(ng == naive, || format!("n={n} c={c}: the two literal recursions disagree"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} constants"))
}

/// Full vs Antichain vs the literal oracle on random non-constant vectors.
pub fn random_agree(count: usize, seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < count {
        let n = rng.gen_range(1..=4);
        let h = positive(&mut rng, n, 6);
        let v = NatVec::from(h.as_slice());
        if v.is_constant() && n > 1 {
            continue;
        }
        let full = decide_general(&v, &DecideOptions::default().with_mode(Mode::Full)).map_err(|e| e.to_string())?.verdict;
        let anti = decide_general(&v, &DecideOptions::default()).map_err(|e| e.to_string())?.verdict;
        let naive = super::naive_general(&h, 10_000).ok_or("oracle ran out")?;
        ensure(full.same_outcome(&anti), || format!("{v}: {full} vs {anti}"))?;
        ensure(full.is_generating() == naive, || format!("{v}: engine {full}, oracle {naive}"))?;
        checked += 1;
    }
    Ok(format!("{count} random vectors"))
}

pub fn permutation_equivariance(samples: usize, seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(1..=4);
        let h = NatVec::from(positive(&mut rng, n, 6).as_slice());
        let perms = all_permutations(n);
        let s = &perms[rng.gen_range(0..perms.len())];
        let a = decide(&h, &DecideOptions::default()).map_err(|e| e.to_string())?;
        let g = h.compose(s).unwrap();
        let b = decide(&g, &DecideOptions::default()).map_err(|e| e.to_string())?;
        ensure(a.same_outcome(&b), || format!("{h}: {a}, {g}: {b}"))?;
    }
    Ok(format!("{samples} samples"))
}

pub fn upward_monotone(samples: usize, seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(3..=4);
        let v = positive(&mut rng, n, 5);
        let h = NatVec::from(v.as_slice());
        let g = NatVec::new(v.iter().map(|x| x + rng.gen_range(0..=3)).collect()).unwrap();
        if decide(&h, &DecideOptions::default()).map_err(|e| e.to_string())?.is_generating() {
            let b = decide(&g, &DecideOptions::default()).map_err(|e| e.to_string())?;
            ensure(b.is_generating(), || format!("{h} generating but {g}: {b}"))?;
        }
    }
    Ok(format!("{samples} samples"))
}

pub fn weight_oracle(samples: usize, seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(1..=6);
        let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=40)).collect();
        let l = rng.gen_range(1.01..4.0);
        let w = weight(&NatVec::from(v.as_slice()), l).map_err(|e| e.to_string())?;
        let o = super::brute_weight(&v, l);
        ensure((w - o).abs() <= 1e-9 * o.abs().max(1.0), || format!("{v:?} at {l}: {w} vs {o}"))?;
    }
    Ok(format!("{samples} samples, n <= 6"))
}

pub fn mean_chain(samples: usize, seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(1..=7);
        let f = NatVec::from(positive(&mut rng, n, 50).as_slice());
        let m = |q| mean(q, &f).unwrap().exact().unwrap().clone();
        let (lo, h, a, hi) = (m(MeanDegree::NegInf), m(MeanDegree::Harmonic), m(MeanDegree::Arithmetic), m(MeanDegree::PosInf));
        ensure(lo <= h && h <= a && a <= hi, || format!("{f}: {lo} {h} {a} {hi}"))?;
        ensure(h == harmonic_mean(&f).unwrap(), || format!("{f}: harmonic mean paths differ"))?;
    }
    Ok(format!("{samples} samples"))
}
