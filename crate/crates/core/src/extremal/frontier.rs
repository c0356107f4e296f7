use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nvec::{NatVec, Rational};

/// Largest coordinate the enumeration will consider.
pub const COORD_CAP: u64 = 1_000_000;
/// Largest number of candidates (before reduction) the enumeration will produce.
pub const FRONTIER_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrontierSet {
    pub n: usize,
    pub t: Rational,
    /// Monotone vectors, lexicographic order.
    pub minimal: Vec<NatVec>,
}

/// `⌊1/b⌋ + 1`: the least positive integer `v` with `1/v < b`.
fn least_above(b: &Rational) -> Result<u64> {
    let q = b.recip()?.floor();
    q.to_u64()
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::Budget(format!("coordinate above {COORD_CAP}")))
}

fn floor_div(num: u64, b: &Rational) -> Result<u64> {
    (Rational::from(num) / b.clone())
        .floor()
        .to_u64()
        .ok_or_else(|| Error::Budget(format!("coordinate above {COORD_CAP}")))
}

/// Sorted-vector dominance: `a ≥ b` after sorting both ascending.
pub fn dominates_sorted(a: &NatVec, b: &NatVec) -> bool {
    let (a, b) = (a.canonical(), b.canonical());
    a.dim() == b.dim() && a.entries().iter().zip(b.entries()).all(|(x, y)| x >= y)
}

/// `Σ 1/x(i) < n/t`, i.e. `M_{−1}(x) > t`.
pub fn harmonic_exceeds(x: &NatVec, t: &Rational) -> bool {
    if x.entries().contains(&0) {
        return false;
    }
    let mut s = Rational::zero();
    for &v in x.entries() {
        s = s + Rational::from(v).recip().unwrap();
    }
    s < Rational::from(x.dim() as u64) / t.clone()
}

/// Minimal monotone vectors with harmonic mean above `t`.
pub fn minimal_frontier(n: usize, t: &Rational) -> Result<FrontierSet> {
    if n == 0 {
        return Err(Error::BadDimension { got: 0, max: usize::MAX });
    }
    if !t.is_positive() {
        return Err(Error::Domain(format!("threshold must be positive, got {t}")));
    }
    let budget = Rational::from(n as u64) / t.clone();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    dfs(n, &budget, 1, &mut prefix, &mut out)?;
    let mut minimal: Vec<NatVec> = Vec::new();
    out.sort_by_key(|v: &NatVec| v.entries().iter().sum::<u64>());
    for v in out {
        if !minimal.iter().any(|m| v.dominates(m).unwrap()) {
            minimal.push(v);
        }
    }
    minimal.sort();
    Ok(FrontierSet { n, t: t.clone(), minimal })
}

fn dfs(n: usize, b: &Rational, prev: u64, prefix: &mut Vec<u64>, out: &mut Vec<NatVec>) -> Result<()> {
    let i = prefix.len();
    let lo = prev.max(least_above(b)?);
    if lo > COORD_CAP {
        return Err(Error::Budget(format!("coordinate {lo} exceeds the cap {COORD_CAP}")));
    }
    if i + 1 == n {
        prefix.push(lo);
        out.push(NatVec::new(prefix.clone())?);
        prefix.pop();
        if out.len() > FRONTIER_CAP {
            return Err(Error::Budget(format!("more than {FRONTIER_CAP} frontier candidates")));
        }
        return Ok(());
    }
    // Past (n−i)/b the all-equal tail is already feasible and dominated.
    let hi = floor_div((n - i) as u64, b)?.saturating_add(1);
    for v in lo..=hi.max(lo) {
        let rest = b.clone() - Rational::from(v).recip()?;
        if !rest.is_positive() {
            continue;
        }
        prefix.push(v);
        dfs(n, &rest, v, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(list: &[&[u64]]) -> Vec<NatVec> {
        list.iter().map(|v| NatVec::from(*v)).collect()
    }

    #[test]
    fn three_at_three() {
        let f = minimal_frontier(3, &Rational::from(3)).unwrap();
        assert_eq!(f.minimal, vs(&[&[2, 3, 7], &[2, 4, 5], &[3, 3, 4]]));
    }

    #[test]
    fn two_at_two() {
        let f = minimal_frontier(2, &Rational::from(2)).unwrap();
        assert_eq!(f.minimal, vs(&[&[2, 3]]));
    }

    #[test]
    fn four_at_five_has_long_tail() {
        let f = minimal_frontier(4, &Rational::from(5)).unwrap();
        assert!(f.minimal.contains(&NatVec::from([2, 4, 21, 421])));
        assert!(f.minimal.iter().all(|x| harmonic_exceeds(x, &f.t)));
    }

    #[test]
    fn one_dim() {
        let f = minimal_frontier(1, &"9 9/49".parse().unwrap()).unwrap();
        assert_eq!(f.minimal, vs(&[&[10]]));
        let f = minimal_frontier(1, &Rational::from(3)).unwrap();
        assert_eq!(f.minimal, vs(&[&[4]]));
    }
}
