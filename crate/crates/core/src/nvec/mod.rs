//! Vector algebra over ω^n.

pub mod lattice;
mod mean;
mod natvec;
mod rational;
mod vecset;

pub use mean::{harmonic_mean, mean, MeanDegree, MeanValue};
pub use natvec::{all_permutations, check_permutation, cyclic_permutation, NatVec};
pub use rational::Rational;
pub use vecset::{antichain_min, in_upset, k_fold_sum, minkowski_sum, orbit_closure, VecSet};

/// `1_i`.
pub fn unit_vector(n: usize, i: usize) -> crate::Result<NatVec> {
    NatVec::unit(n, i)
}

/// `1̄_J`.
pub fn indicator(n: usize, set: &[usize]) -> crate::Result<NatVec> {
    NatVec::indicator(n, set)
}

/// `S f = (0, f(0), …, f(n−2))`.
pub fn shift_s(f: &NatVec) -> NatVec {
    f.shift()
}
