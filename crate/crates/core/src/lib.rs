//! Decision procedures for 0-generacy of integer vectors.
//!
//! A vector `h` in ω^n is *0-generating* when the zero vector eventually
//! appears in one of the reach-sets built by the recursion
//! `ℏ^{[m+1]}(i) = ℏ^{[m]}(i) ∪ {x − x(i)·1_i : x ∈ Σ_j ℏ^{[m]}(j), x < ℏ}`.
//! This crate decides the property, emits and checks certificates for both
//! outcomes, computes the extremal sequences `s_{-∞}(n)` and bounds on
//! `s_{-1}(n)`, and evaluates the growth functions φ and ϕ.

pub mod analysis;
pub mod certificates;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod generacy;
pub mod nvec;

pub use error::{Error, Result};
pub use generacy::{decide, decide_const, decide_general, Budget, DecideOptions, Mode, Verdict};
pub use nvec::{NatVec, Rational, VecSet};
