use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::lattice::{pt_from, pt_to, BoxSpace, Bits};
use super::natvec::all_permutations;
use super::NatVec;

/// A finite subset of ω^n.
///
/// Members inside the bounding box live in a dense bit-set; anything else
/// (or everything, when no box is set) sits in a sorted overflow list.
#[derive(Clone, Debug)]
pub struct VecSet {
    n: usize,
    space: Option<BoxSpace>,
    dense: Option<Bits>,
    overflow: BTreeSet<NatVec>,
}

impl PartialEq for VecSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.len() == other.len() && self.iter().eq(other.iter())
    }
}

impl Eq for VecSet {}

impl VecSet {
    pub fn new(n: usize) -> Self {
        VecSet { n, space: None, dense: None, overflow: BTreeSet::new() }
    }

    /// A set with dense storage over `{x : x < caps}`.
    pub fn with_box(caps: &NatVec) -> Self {
        let space = BoxSpace::new(caps.entries());
        let dense = space.as_ref().map(|s| Bits::new(s.size));
        VecSet { n: caps.dim(), space, dense, overflow: BTreeSet::new() }
    }

    pub fn from_vecs<I: IntoIterator<Item = NatVec>>(n: usize, it: I) -> Result<Self> {
        let mut s = VecSet::new(n);
        for v in it {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn singleton(v: NatVec) -> Self {
        let mut s = VecSet::new(v.dim());
        s.overflow.insert(v);
        s
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn caps(&self) -> Option<NatVec> {
        self.space
            .as_ref()
            .map(|s| NatVec::new(s.caps[..s.n].iter().map(|&c| u64::from(c)).collect()).unwrap())
    }

    fn slot(&self, v: &NatVec) -> Option<usize> {
        let space = self.space.as_ref()?;
        let p = pt_from(v)?;
        space.contains(&p).then(|| space.encode(&p))
    }

    pub fn insert(&mut self, v: NatVec) -> Result<bool> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch { left: v.dim(), right: self.n });
        }
        match self.slot(&v) {
            Some(idx) => Ok(self.dense.as_mut().unwrap().insert(idx)),
            None => Ok(self.overflow.insert(v)),
        }
    }

    pub fn contains(&self, v: &NatVec) -> bool {
        if v.dim() != self.n {
            return false;
        }
        match self.slot(v) {
            Some(idx) => self.dense.as_ref().unwrap().contains(idx),
            None => self.overflow.contains(v),
        }
    }

    pub fn len(&self) -> usize {
        self.dense.as_ref().map_or(0, Bits::len) + self.overflow.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Box members in mixed-radix order, then overflow members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = NatVec> + '_ {
        let dense = self.dense.iter().flat_map(move |b| {
            let space = self.space.as_ref().unwrap();
            b.iter().map(move |idx| pt_to(&space.decode(idx), self.n))
        });
        dense.chain(self.overflow.iter().cloned())
    }

    pub fn to_vec(&self) -> Vec<NatVec> {
        let mut v: Vec<NatVec> = self.iter().collect();
        v.sort();
        v
    }
}

fn check_same_dim(a: &VecSet, b: &VecSet) -> Result<()> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { left: a.n, right: b.n });
    }
    Ok(())
}

fn empty_like(n: usize, cap: Option<&NatVec>) -> VecSet {
    match cap {
        Some(h) => VecSet::with_box(h),
        None => VecSet::new(n),
    }
}

/// `A + B = {a + b}`; with a cap `h`, sums not strictly below `h` are dropped.
pub fn minkowski_sum(a: &VecSet, b: &VecSet, cap: Option<&NatVec>) -> Result<VecSet> {
    check_same_dim(a, b)?;
    if let Some(h) = cap {
        if h.dim() != a.n {
            return Err(Error::DimensionMismatch { left: h.dim(), right: a.n });
        }
    }
    let mut out = empty_like(a.n, cap);
    let bs: Vec<NatVec> = b.iter().collect();
    for x in a.iter() {
        for y in &bs {
            let s = x.checked_add(y)?;
            if cap.map_or(true, |h| s.strictly_below(h).unwrap()) {
                out.insert(s)?;
            }
        }
    }
    Ok(out)
}

/// `Σ^k A`, with `Σ^0 A = {0}`.
pub fn k_fold_sum(a: &VecSet, k: usize, cap: Option<&NatVec>) -> Result<VecSet> {
    let mut acc = empty_like(a.n, cap);
    let zero = NatVec::zeros(a.n);
    if cap.map_or(true, |h| zero.strictly_below(h).unwrap_or(false)) || k == 0 {
        acc.insert(zero)?;
    }
    for _ in 0..k {
        acc = minkowski_sum(&acc, a, cap)?;
    }
    Ok(acc)
}

/// `A∘Σ_n`.
pub fn orbit_closure(a: &VecSet) -> VecSet {
    let perms = all_permutations(a.n);
    let mut out = VecSet::new(a.n);
    for v in a.iter() {
        for s in &perms {
            out.insert(v.compose(s).unwrap()).unwrap();
        }
    }
    out
}

/// `≤`-minimal members, sorted lexicographically.
pub fn antichain_min(a: &VecSet) -> Vec<NatVec> {
    let mut all: Vec<NatVec> = a.iter().collect();
    all.sort_by_key(|v| (v.entries().iter().sum::<u64>(), v.clone()));
    let mut kept: Vec<NatVec> = Vec::new();
    for v in all {
        if !kept.iter().any(|k| v.dominates(k).unwrap()) {
            kept.push(v);
        }
    }
    kept.sort();
    kept
}

/// `x ∈ ↑A`.
pub fn in_upset(a: &[NatVec], x: &NatVec) -> bool {
    a.iter().any(|m| x.dominates(m).unwrap_or(false))
}
