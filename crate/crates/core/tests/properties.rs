mod common;

use proptest::prelude::*;
use zerogen::analysis::weight;
use zerogen::extremal::{harmonic_exceeds, minimal_frontier};
use zerogen::nvec::{all_permutations, cyclic_permutation, harmonic_mean, mean, MeanDegree};
use zerogen::{decide, decide_general, DecideOptions, NatVec, Rational};

fn vec_in(n: std::ops::RangeInclusive<usize>, hi: u64) -> impl Strategy<Value = Vec<u64>> {
    n.prop_flat_map(move |n| proptest::collection::vec(0..=hi, n))
}

fn positive_vec(n: std::ops::RangeInclusive<usize>, hi: u64) -> impl Strategy<Value = Vec<u64>> {
    n.prop_flat_map(move |n| proptest::collection::vec(1..=hi, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_is_sorted_and_idempotent(v in vec_in(1..=8, 20)) {
        let x = NatVec::from(v.as_slice());
        let c = x.canonical();
        prop_assert!(c.is_monotone());
        prop_assert_eq!(c.canonical(), c.clone());
        let mut s = v.clone();
        s.sort();
        prop_assert_eq!(c.entries(), s.as_slice());
    }

    #[test]
    fn shift_is_zeroing_then_cyclic(v in vec_in(1..=6, 30)) {
        let f = NatVec::from(v.as_slice());
        let n = f.dim();
        let via = f.zero_at(n - 1).compose(&cyclic_permutation(n)).unwrap();
        prop_assert_eq!(f.shift(), via);
    }

    #[test]
    fn dominance_is_a_partial_order(a in vec_in(3..=3, 5), b in vec_in(3..=3, 5), c in vec_in(3..=3, 5)) {
        let (a, b, c) = (NatVec::from(a.as_slice()), NatVec::from(b.as_slice()), NatVec::from(c.as_slice()));
        prop_assert!(a.dominates(&a).unwrap());
        if a.dominates(&b).unwrap() && b.dominates(&a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if a.dominates(&b).unwrap() && b.dominates(&c).unwrap() {
            prop_assert!(a.dominates(&c).unwrap());
        }
        if b.strictly_below(&a).unwrap() {
            prop_assert!(a.dominates(&b).unwrap());
        }
    }

    #[test]
    fn mean_chain(v in positive_vec(1..=7, 50)) {
        let f = NatVec::from(v.as_slice());
        let m = |q| mean(q, &f).unwrap().exact().unwrap().clone();
        let (lo, h, a, hi) = (m(MeanDegree::NegInf), m(MeanDegree::Harmonic), m(MeanDegree::Arithmetic), m(MeanDegree::PosInf));
        prop_assert!(lo <= h && h <= a && a <= hi, "{} {} {} {}", lo, h, a, hi);
        prop_assert_eq!(h, harmonic_mean(&f).unwrap());
    }

    #[test]
    fn weight_matches_rearrangement_oracle(v in vec_in(1..=6, 40), l in 1.01f64..4.0) {
        let f = NatVec::from(v.as_slice());
        let w = weight(&f, l).unwrap();
        let o = common::brute_weight(&v, l);
        prop_assert!((w - o).abs() <= 1e-9 * o.abs().max(1.0), "{} vs {}", w, o);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_equivariance(v in positive_vec(1..=4, 6), pick in 0usize..24) {
        let h = NatVec::from(v.as_slice());
        let perms = all_permutations(h.dim());
        let s = &perms[pick % perms.len()];
        let a = decide(&h, &DecideOptions::default()).unwrap();
        let b = decide(&h.compose(s).unwrap(), &DecideOptions::default()).unwrap();
        prop_assert!(a.same_outcome(&b), "{} vs {}", a, b);
    }

    #[test]
    fn upward_monotone(v in positive_vec(3..=4, 5), d in vec_in(4..=4, 3)) {
        let h = NatVec::from(v.as_slice());
        let g = NatVec::new(v.iter().zip(&d).map(|(a, b)| a + b).collect()).unwrap();
        let a = decide(&h, &DecideOptions::default()).unwrap();
        if a.is_generating() {
            prop_assert!(decide(&g, &DecideOptions::default()).unwrap().is_generating(), "{} gen but {} not", h, g);
        }
    }

    #[test]
    fn fixpoint_stage_bound(v in vec_in(1..=4, 5)) {
        let h = NatVec::from(v.as_slice());
        let r = decide_general(&h, &DecideOptions::default()).unwrap();
        let prod: u64 = v.iter().product();
        prop_assert!(r.verdict.stage() <= 1 + prod, "{}: stage {}", h, r.verdict.stage());
        if v.contains(&0) {
            prop_assert!(r.verdict.is_not_generating());
        }
    }

    #[test]
    fn frontier_elements_are_strict_and_minimal(n in 1usize..=4, p in 1u64..=12, q in 1u64..=3) {
        let t = Rational::new(p as i64, q as i64).unwrap();
        let f = match minimal_frontier(n, &t) {
            Ok(f) => f,
            Err(zerogen::Error::Budget(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for x in &f.minimal {
            prop_assert!(x.is_monotone());
            prop_assert!(harmonic_exceeds(x, &t));
            prop_assert!(common::harmonic_above(x.entries(), p, q));
            for i in 0..n {
                if x.get(i) > 1 {
                    let mut e = x.entries().to_vec();
                    e[i] -= 1;
                    let y = NatVec::new(e).unwrap().canonical();
                    prop_assert!(!harmonic_exceeds(&y, &t), "{} not minimal", x);
                }
            }
        }
    }
}

#[test]
fn upward_monotone_exhaustive_pairs() {
    let opts = DecideOptions::default();
    let mut gen = std::collections::HashMap::new();
    for a in 0..=5u64 {
        for b in 0..=5u64 {
            gen.insert((a, b), decide(&NatVec::from([a, b]), &opts).unwrap().is_generating());
        }
    }
    for a in 0..=5u64 {
        for b in 0..=5u64 {
            if gen[&(a, b)] {
                for c in a..=5 {
                    for d in b..=5 {
                        assert!(gen[&(c, d)], "({a},{b}) generating but ({c},{d}) not");
                    }
                }
            }
        }
    }
}

fn covered(x: &[u64], f: &[NatVec]) -> bool {
    f.iter().any(|m| x.iter().zip(m.entries()).all(|(a, b)| a >= b))
}

#[test]
fn frontier_covers_brute_force_box() {
    for (n, hi, ts) in [(3usize, 12u64, vec![(3u64, 1u64), (5, 2), (4, 1)]), (4, 8, vec![(5, 1), (9, 2), (4, 1)])] {
        for (p, q) in ts {
            let t = Rational::new(p as i64, q as i64).unwrap();
            let f = minimal_frontier(n, &t).unwrap();
            for x in common::monotone_box(n, 1, hi) {
                if common::harmonic_above(&x, p, q) {
                    assert!(covered(&x, &f.minimal), "n={n} t={t}: {x:?} uncovered");
                }
            }
        }
    }
}
