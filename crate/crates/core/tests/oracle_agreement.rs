mod common;

use common::{checks, naive_const};

#[test]
fn constants_all_paths_agree() {
    checks::constants_agree(4, 7).unwrap();
}

#[test]
fn oracle_reproduces_small_extremal_values() {
    for (n, s) in [(1usize, 1u64), (2, 2), (3, 3), (4, 5)] {
        assert_eq!(naive_const(s, n, 10_000), Some(false), "n={n}");
        assert_eq!(naive_const(s + 1, n, 10_000), Some(true), "n={n}");
    }
}

#[test]
fn random_vectors_agree_with_oracle() {
    checks::random_agree(500, 7).unwrap();
}
