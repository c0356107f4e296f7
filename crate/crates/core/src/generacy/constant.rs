use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::nvec::lattice::{pt_add, pt_compose, pt_sorted, pt_to, BoxSpace, Bits, Pt, MAX_DIM};
use crate::nvec::{all_permutations, NatVec};

use super::budget::{Meter, Resource};
use super::reduce::{upset_of, Collector};
use super::{DecideOptions, Mode, Verdict};

/// First derivation of an orbit: `fhat = 1̄_{n∖k} + Σ parts` and the
/// orbit's new member is `fhat` with its last coordinate zeroed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstDerivation {
    pub stage: u64,
    pub k: usize,
    pub fhat: NatVec,
    pub parts: Vec<NatVec>,
}

impl ConstDerivation {
    pub fn f(&self) -> NatVec {
        self.fhat.zero_at(self.fhat.dim() - 1)
    }
}

/// Snapshot of `ℏ^{(m]}` for a constant bound.
#[derive(Clone, Debug)]
pub struct ConstReach {
    pub c: u64,
    pub n: usize,
    pub mode: Mode,
    pub stage: u64,
    /// `ℏ^{(m]}` (Full) or its minimal elements (Antichain); closed under permutations.
    pub set: Vec<NatVec>,
    pub fresh: Vec<NatVec>,
    /// Keyed by the canonical (sorted) form of the orbit.
    pub provenance: Option<HashMap<NatVec, ConstDerivation>>,
}

#[derive(Clone, Debug)]
pub struct ConstRun {
    pub verdict: Verdict,
    pub reach: ConstReach,
}

struct Deriv {
    stage: u64,
    k: usize,
    fhat: Pt,
    parts: Vec<Pt>,
}

type Link = (u32, u32);
const ROOT: u32 = u32::MAX;

/// Stepper for the constant-case recursion.
pub struct ConstEngine {
    c: u64,
    n: usize,
    mode: Mode,
    space: Option<BoxSpace>,
    stage: u64,
    members: Vec<Pt>,
    cover: Bits,
    fresh: Vec<Pt>,
    allsum: Vec<Bits>,
    sum_links: Vec<HashMap<usize, (Pt, Pt)>>,
    prov: Option<HashMap<Pt, Deriv>>,
    perms: Vec<Vec<usize>>,
    scratch: Bits,
    meter: Meter,
    verdict: Option<Verdict>,
}

fn tail_indicator(n: usize, k: usize) -> Pt {
    let mut p = [0u32; MAX_DIM];
    for x in p.iter_mut().take(n).skip(k) {
        *x = 1;
    }
    p
}

impl ConstEngine {
    pub fn new(c: u64, n: usize, opts: &DecideOptions) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::BadDimension { got: n, max: MAX_DIM });
        }
        let space = BoxSpace::new(&vec![c; n]);
        let size = space.as_ref().map_or(0, |s| s.size);
        let mut eng = ConstEngine {
            c,
            n,
            mode: opts.mode,
            space: space.clone(),
            stage: 0,
            members: Vec::new(),
            cover: Bits::new(size),
            fresh: Vec::new(),
            allsum: (0..n).map(|_| Bits::new(size)).collect(),
            sum_links: vec![HashMap::new(); n],
            prov: opts.provenance.then(HashMap::new),
            perms: all_permutations(n),
            scratch: Bits::new(size),
            meter: Meter::new(&opts.budget),
            verdict: None,
        };
        if space.is_none() {
            eng.verdict = Some(Verdict::BudgetExceeded { stage: 0, resource: Resource::BoxSize });
        }
        Ok(eng)
    }

    pub fn verdict(&self) -> Option<Verdict> {
        self.verdict
    }

    pub fn stage(&self) -> u64 {
        self.stage
    }

    pub fn tuples(&self) -> u64 {
        self.meter.tuples()
    }

    pub fn step(&mut self) -> Option<Verdict> {
        if self.verdict.is_some() {
            return self.verdict;
        }
        let res = match self.mode {
            Mode::Antichain => self.step_antichain(),
            Mode::Full => self.step_full(),
        };
        match res {
            Ok(v) => self.verdict = v,
            Err(resource) => self.verdict = Some(Verdict::BudgetExceeded { stage: self.stage, resource }),
        }
        self.verdict
    }

    pub fn run(&mut self) -> Verdict {
        loop {
            if let Some(v) = self.step() {
                return v;
            }
        }
    }

    fn sum_into<T: Copy>(
        &mut self,
        space: &BoxSpace,
        lhs: &[Pt],
        rhs: &[Pt],
        skip: Option<&Bits>,
        col: &mut Collector<T>,
        tag: impl Fn(usize, usize) -> T,
    ) -> std::result::Result<(), Resource> {
        let c0 = space.caps[0];
        for (ai, a) in lhs.iter().enumerate() {
            let lim = c0 - a[0];
            let mut count = 0u64;
            for (bi, b) in rhs.iter().enumerate() {
                if b[0] >= lim {
                    break;
                }
                count += 1;
                let s = pt_add(a, b);
                if space.contains(&s) && skip.map_or(true, |sk| !sk.contains(space.encode(&s))) {
                    col.push(space, &mut self.scratch, s, tag(ai, bi));
                }
            }
            self.meter.charge(count)?;
        }
        self.meter.set_size(col.len())
    }

    /// Candidates `z = (1̄_{n∖k} + t)` with the last coordinate zeroed, for `t` in `level`.
    fn candidates(&self, space: &BoxSpace, k: usize, level: &[Pt], out: &mut Vec<(Pt, usize, usize, Pt)>) {
        let ind = tail_indicator(self.n, k);
        for (ti, t) in level.iter().enumerate() {
            let x = pt_add(t, &ind);
            if !space.contains(&x) {
                continue;
            }
            let mut z = x;
            z[self.n - 1] = 0;
            if !self.cover.contains(space.encode(&z)) {
                out.push((z, k, ti, x));
            }
        }
    }

    /// Add every permutation of each new vector; returns the new members and
    /// whether zero was among them.
    fn absorb(
        &mut self,
        space: &BoxSpace,
        cands: Vec<(Pt, usize, usize, Pt)>,
        parts_of: impl Fn(usize, usize) -> Vec<Pt>,
    ) -> (Vec<Pt>, bool) {
        let n = self.n;
        let mut col: Collector<()> = Collector::new();
        let mut zero = false;
        for (z, k, ti, x) in &cands {
            if z.iter().all(|&v| v == 0) {
                zero = true;
            }
            if let Some(prov) = self.prov.as_mut() {
                let key = pt_sorted(z, n);
                if !prov.contains_key(&key) {
                    let parts = parts_of(*k, *ti);
                    prov.insert(key, Deriv { stage: self.stage, k: *k, fhat: *x, parts });
                }
            }
            for s in &self.perms {
                let q = pt_compose(z, s);
                if !self.cover.contains(space.encode(&q)) {
                    col.push(space, &mut self.scratch, q, ());
                }
            }
        }
        (col.finish_all(&mut self.scratch).into_iter().map(|x| x.0).collect(), zero)
    }

    fn step_antichain(&mut self) -> std::result::Result<Option<Verdict>, Resource> {
        let space = self.space.clone().expect("box checked in new");
        let n = self.n;
        self.stage += 1;
        self.meter.stage(self.stage)?;
        let mut levels: Vec<Vec<(Pt, Link)>> = Vec::new();
        if space.size > 0 {
            levels.push(vec![([0u32; MAX_DIM], (ROOT, ROOT))]);
        }
        let members = self.members.clone();
        while !levels.is_empty() && levels.len() < n && !members.is_empty() {
            let lhs: Vec<Pt> = levels.last().unwrap().iter().map(|x| x.0).collect();
            let mut col: Collector<Link> = Collector::new();
            self.sum_into(&space, &lhs, &members, None, &mut col, |a, b| (a as u32, b as u32))?;
            let next = col.finish_minimal(&space, &mut self.scratch);
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        let mut cands = Vec::new();
        for (k, level) in levels.iter().enumerate() {
            let pts: Vec<Pt> = level.iter().map(|x| x.0).collect();
            self.candidates(&space, k, &pts, &mut cands);
        }
        let parts_of = |k: usize, ti: usize| {
            let mut parts = Vec::with_capacity(k);
            let (mut lvl, mut pos) = (k, ti);
            while lvl > 0 {
                let (_, (prev, b)) = levels[lvl][pos];
                parts.push(members[b as usize]);
                pos = prev as usize;
                lvl -= 1;
            }
            parts.reverse();
            parts
        };
        let (news, zero) = self.absorb(&space, cands, parts_of);
        let changed = !news.is_empty();
        if changed {
            let mut col: Collector<()> = Collector::new();
            for p in self.members.iter().chain(news.iter()) {
                col.push(&space, &mut self.scratch, *p, ());
            }
            self.members = col.finish_minimal(&space, &mut self.scratch).into_iter().map(|x| x.0).collect();
            self.cover = upset_of(&space, &self.members);
            self.meter.set_size(self.members.len())?;
        }
        self.fresh = news;
        Ok(self.conclude(zero, changed))
    }

    fn step_full(&mut self) -> std::result::Result<Option<Verdict>, Resource> {
        let space = self.space.clone().expect("box checked in new");
        let n = self.n;
        self.stage += 1;
        self.meter.stage(self.stage)?;
        let track = self.prov.is_some();
        let mut delta: Vec<Pt> = Vec::new();
        if self.stage == 1 && space.size > 0 {
            delta.push([0u32; MAX_DIM]);
        }
        let mut cands = Vec::new();
        self.candidates(&space, 0, &delta, &mut cands);
        let members = self.members.clone();
        let fresh = self.fresh.clone();
        for k in 1..n {
            let old_prev: Vec<Pt> = self.allsum[k - 1].iter().map(|i| space.decode(i)).collect();
            let skip = std::mem::replace(&mut self.allsum[k], Bits::new(0));
            let mut col: Collector<(Pt, Pt)> = Collector::new();
            let lhs = delta.clone();
            let r = self
                .sum_into(&space, &lhs, &members, Some(&skip), &mut col, |a, b| (lhs[a], members[b]))
                .and_then(|_| {
                    self.sum_into(&space, &old_prev, &fresh, Some(&skip), &mut col, |a, b| (old_prev[a], fresh[b]))
                });
            self.allsum[k] = skip;
            if let Err(e) = r {
                col.finish_all(&mut self.scratch);
                return Err(e);
            }
            for p in &delta {
                self.allsum[k - 1].insert(space.encode(p));
            }
            let next = col.finish_all(&mut self.scratch);
            if track {
                for (s, link) in &next {
                    self.sum_links[k].insert(space.encode(s), *link);
                }
            }
            delta = next.into_iter().map(|x| x.0).collect();
            self.candidates(&space, k, &delta, &mut cands);
        }
        for p in &delta {
            self.allsum[n - 1].insert(space.encode(p));
        }
        let links = &self.sum_links;
        let parts_of = |k: usize, t: Pt| {
            let mut parts = Vec::with_capacity(k);
            let mut cur = t;
            for lvl in (1..=k).rev() {
                let (prev, a) = links[lvl][&space.encode(&cur)];
                parts.push(a);
                cur = prev;
            }
            parts.reverse();
            parts
        };
        let cands: Vec<(Pt, usize, usize, Pt)> = cands;
        let ind_of = |k: usize| tail_indicator(n, k);
        let mut resolved = Vec::with_capacity(cands.len());
        for (z, k, _, x) in cands {
            let mut t = x;
            let ind = ind_of(k);
            for i in 0..n {
                t[i] -= ind[i];
            }
            resolved.push((z, k, t, x));
        }
        let mut parts_table: HashMap<(usize, Pt), Vec<Pt>> = HashMap::new();
        if track {
            for (_, k, t, _) in &resolved {
                parts_table.entry((*k, *t)).or_insert_with(|| parts_of(*k, *t));
            }
        }
        let flat: Vec<(Pt, usize, usize, Pt)> = resolved
            .iter()
            .enumerate()
            .map(|(i, (z, k, _, x))| (*z, *k, i, *x))
            .collect();
        let lookup = |_k: usize, i: usize| {
            let (_, k, t, _) = resolved[i];
            parts_table.get(&(k, t)).cloned().unwrap_or_default()
        };
        let (news, zero) = self.absorb(&space, flat, lookup);
        for p in &news {
            self.cover.insert(space.encode(p));
        }
        let changed = !news.is_empty();
        if changed {
            self.members = self.cover.iter().map(|i| space.decode(i)).collect();
        }
        self.meter.set_size(self.cover.len() + self.allsum.iter().map(Bits::len).sum::<usize>())?;
        self.fresh = news;
        Ok(self.conclude(zero, changed))
    }

    fn conclude(&self, zero: bool, changed: bool) -> Option<Verdict> {
        if zero {
            Some(Verdict::Generating { witness_index: self.n - 1, stage: self.stage })
        } else if !changed {
            Some(Verdict::NotGenerating { fixpoint_stage: self.stage })
        } else {
            None
        }
    }

    pub fn reach(&self) -> ConstReach {
        let n = self.n;
        let provenance = self.prov.as_ref().map(|m| {
            m.iter()
                .map(|(key, d)| {
                    let cd = ConstDerivation {
                        stage: d.stage,
                        k: d.k,
                        fhat: pt_to(&d.fhat, n),
                        parts: d.parts.iter().map(|p| pt_to(p, n)).collect(),
                    };
                    (pt_to(key, n), cd)
                })
                .collect()
        });
        ConstReach {
            c: self.c,
            n,
            mode: self.mode,
            stage: self.stage,
            set: self.members.iter().map(|p| pt_to(p, n)).collect(),
            fresh: self.fresh.iter().map(|p| pt_to(p, n)).collect(),
            provenance,
        }
    }
}

/// Run the constant-case recursion for `ℏ ≡ c` on `n` coordinates.
pub fn decide_const(c: u64, n: usize, opts: &DecideOptions) -> Result<ConstRun> {
    let mut eng = ConstEngine::new(c, n, opts)?;
    let verdict = eng.run();
    Ok(ConstRun { verdict, reach: eng.reach() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(c: u64, n: usize, mode: Mode) -> Verdict {
        decide_const(c, n, &DecideOptions::default().with_mode(mode)).unwrap().verdict
    }

    #[test]
    fn first_stage_is_orbit_of_ones() {
        for mode in [Mode::Full, Mode::Antichain] {
            let mut e = ConstEngine::new(5, 4, &DecideOptions::default().with_mode(mode)).unwrap();
            assert_eq!(e.step(), None);
            let r = e.reach();
            let mut fresh = r.fresh.clone();
            fresh.sort();
            assert_eq!(fresh.len(), 4);
            assert!(fresh.iter().all(|v| v.canonical() == NatVec::from([0, 1, 1, 1])));
        }
    }

    #[test]
    fn trivial_bounds() {
        for mode in [Mode::Full, Mode::Antichain] {
            for n in 1..=4 {
                assert_eq!(verdict(1, n, mode), Verdict::NotGenerating { fixpoint_stage: 1 });
                assert!(verdict(0, n, mode).is_not_generating());
            }
            assert!(verdict(2, 1, mode).is_generating());
        }
    }

    #[test]
    fn small_extremal_values() {
        for mode in [Mode::Full, Mode::Antichain] {
            assert!(verdict(2, 2, mode).is_not_generating());
            assert!(verdict(3, 2, mode).is_generating());
            assert!(verdict(3, 3, mode).is_not_generating());
            assert!(verdict(4, 3, mode).is_generating());
            assert!(verdict(5, 4, mode).is_not_generating());
            assert!(verdict(6, 4, mode).is_generating());
        }
    }

    #[test]
    fn provenance_is_consistent() {
        for mode in [Mode::Full, Mode::Antichain] {
            let opts = DecideOptions::default().with_mode(mode).with_provenance();
            let r = decide_const(6, 4, &opts).unwrap();
            let prov = r.reach.provenance.unwrap();
            let d = &prov[&NatVec::zeros(4)];
            assert_eq!(d.parts.len(), d.k);
            let mut s = NatVec::indicator_tail(4, d.k);
            for p in &d.parts {
                s = s.checked_add(p).unwrap();
            }
            assert_eq!(s, d.fhat);
            assert!(d.f().is_zero());
        }
    }
}
