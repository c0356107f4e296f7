use num_traits::ToPrimitive;

use crate::analysis::varphi_int;
use crate::error::{Error, Result};
use crate::nvec::{cyclic_permutation, NatVec};

use super::{ConstStep, ConstWitness, Meta};

/// The constructive witness for the constant bound `1 + φ(n+1)`.
///
/// Starts from `f_0 = 1̄_n`; then for `k = 1, 2, …` repeatedly forms
/// `fhat = 1̄_{n∖k} + k·g` from the previous `g` and records `g = S(fhat)`,
/// until `g` is zero.
pub fn generate_shift_witness(n: usize) -> Result<ConstWitness> {
    if n == 0 {
        return Err(Error::BadDimension { got: 0, max: usize::MAX });
    }
    let hbar = varphi_int(n + 1)
        .value
        .to_u64()
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::Domain(format!("1 + φ({}) does not fit in 64 bits", n + 1)))?;
    let sigma = cyclic_permutation(n);
    let mut steps = Vec::new();
    let fhat = NatVec::indicator_tail(n, 0);
    let mut g = fhat.shift();
    steps.push(ConstStep { f: g.clone(), fhat, k: 0, parts: vec![], refs: Some(vec![]), sigma: Some(sigma.clone()) });
    'outer: for k in 1..n {
        for _m in 0..=(n - k) {
            if g.is_zero() {
                break 'outer;
            }
            let fhat = NatVec::indicator_tail(n, k).checked_add(&g.scale(k as u64))?;
            let prev = steps.len() - 1;
            let next = fhat.shift();
            steps.push(ConstStep {
                f: next.clone(),
                fhat,
                k,
                parts: vec![g.clone(); k],
                refs: Some(vec![prev; k]),
                sigma: Some(sigma.clone()),
            });
            g = next;
        }
    }
    if !g.is_zero() {
        return Err(Error::Domain(format!("construction did not reach zero for n = {n}")));
    }
    let mut meta = Meta::source("shift");
    meta.extra.insert("phi_n_plus_1".into(), serde_json::json!(hbar - 1));
    Ok(ConstWitness { n, hbar, steps, meta })
}
