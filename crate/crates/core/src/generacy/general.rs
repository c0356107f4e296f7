use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::nvec::lattice::{pt_add, pt_from, pt_to, BoxSpace, Bits, Pt, MAX_DIM};
use crate::nvec::NatVec;

use super::budget::{Meter, Resource};
use super::reduce::{upset_of, Collector};
use super::{DecideOptions, Mode, Verdict};

/// How a production `(i, z)` was first obtained: `z = sum − sum(i)·1_i`
/// with `sum = Σ_j selected[j]` and `selected[j]` taken from pool `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralDerivation {
    pub stage: u64,
    pub selected: Vec<NatVec>,
    pub sum: NatVec,
}

/// Snapshot of the per-index reach-sets `ℏ^{[m]}(i)`.
#[derive(Clone, Debug)]
pub struct ReachState {
    pub h: NatVec,
    pub mode: Mode,
    pub stage: u64,
    /// `ℏ^{[m]}(i)` (Full) or its minimal elements (Antichain), including `1_i`.
    pub pools: Vec<Vec<NatVec>>,
    /// `ℏ^{{m}}(i)`: what the last step added.
    pub fresh: Vec<Vec<NatVec>>,
    pub provenance: Option<HashMap<(usize, NatVec), GeneralDerivation>>,
}

#[derive(Clone, Debug)]
pub struct GeneralRun {
    pub verdict: Verdict,
    pub state: ReachState,
}

struct Deriv {
    stage: u64,
    selected: Vec<Pt>,
    sum: Pt,
}

type Link = (u32, u32);
const ROOT: u32 = u32::MAX;

/// Stepper for the general recursion.
pub struct GeneralEngine {
    h: NatVec,
    n: usize,
    mode: Mode,
    space: Option<BoxSpace>,
    stage: u64,
    /// Pool members inside the box, lexicographically sorted.
    members: Vec<Vec<Pt>>,
    /// Antichain: `↑members`; Full: membership.
    cover: Vec<Bits>,
    fresh: Vec<Vec<Pt>>,
    /// Full mode: `Σ_{j≤k} pools[j]` from the previous stage.
    prefix: Vec<Bits>,
    prefix_links: Vec<HashMap<usize, (Pt, Pt)>>,
    prov: Option<HashMap<(usize, Pt), Deriv>>,
    scratch: Bits,
    meter: Meter,
    verdict: Option<Verdict>,
}

impl GeneralEngine {
    pub fn new(h: &NatVec, opts: &DecideOptions) -> Result<Self> {
        let n = h.dim();
        if n > MAX_DIM {
            return Err(Error::BadDimension { got: n, max: MAX_DIM });
        }
        let space = BoxSpace::new(h.entries());
        let mut eng = GeneralEngine {
            h: h.clone(),
            n,
            mode: opts.mode,
            space: space.clone(),
            stage: 0,
            members: vec![Vec::new(); n],
            cover: Vec::new(),
            fresh: vec![Vec::new(); n],
            prefix: Vec::new(),
            prefix_links: vec![HashMap::new(); n],
            prov: opts.provenance.then(HashMap::new),
            scratch: Bits::new(0),
            meter: Meter::new(&opts.budget),
            verdict: None,
        };
        let Some(space) = space else {
            eng.verdict = Some(Verdict::BudgetExceeded { stage: 0, resource: Resource::BoxSize });
            return Ok(eng);
        };
        eng.scratch = Bits::new(space.size);
        eng.prefix = (0..n).map(|_| Bits::new(space.size)).collect();
        for i in 0..n {
            let mut u = [0u32; MAX_DIM];
            u[i] = 1;
            let mut bits = Bits::new(space.size);
            if space.contains(&u) {
                eng.members[i].push(u);
                eng.fresh[i].push(u);
                bits.insert(space.encode(&u));
            }
            eng.cover.push(bits);
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

    /// One application of the recursion. Returns the verdict once decided.
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
            Err(resource) => {
                self.verdict = Some(Verdict::BudgetExceeded { stage: self.stage, resource });
            }
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

    fn sum_level(
        &mut self,
        space: &BoxSpace,
        lhs: &[Pt],
        rhs: &[Pt],
        col: &mut Collector<(Pt, Pt)>,
        skip: Option<&Bits>,
    ) -> std::result::Result<(), Resource> {
        let h0 = space.caps[0];
        for a in lhs {
            let lim = h0 - a[0];
            let mut count = 0u64;
            for b in rhs {
                if b[0] >= lim {
                    break;
                }
                count += 1;
                let s = pt_add(a, b);
                if space.contains(&s) && skip.map_or(true, |sk| !sk.contains(space.encode(&s))) {
                    col.push(space, &mut self.scratch, s, (*a, *b));
                }
            }
            self.meter.charge(count)?;
        }
        self.meter.set_size(col.len())
    }

    fn step_antichain(&mut self) -> std::result::Result<Option<Verdict>, Resource> {
        let space = self.space.clone().expect("box checked in new");
        let n = self.n;
        self.stage += 1;
        self.meter.stage(self.stage)?;
        let mut levels: Vec<Vec<(Pt, Link)>> = Vec::with_capacity(n);
        levels.push(self.members[0].iter().enumerate().map(|(i, p)| (*p, (ROOT, i as u32))).collect());
        for k in 1..n {
            let lhs: Vec<Pt> = levels[k - 1].iter().map(|x| x.0).collect();
            let rhs = self.members[k].clone();
            let mut col = Collector::new();
            self.sum_level(&space, &lhs, &rhs, &mut col, None)?;
            let pos_a: HashMap<Pt, u32> = lhs.iter().enumerate().map(|(i, p)| (*p, i as u32)).collect();
            let pos_b: HashMap<Pt, u32> = rhs.iter().enumerate().map(|(i, p)| (*p, i as u32)).collect();
            let kept = col.finish_minimal(&space, &mut self.scratch);
            levels.push(kept.into_iter().map(|(s, (a, b))| (s, (pos_a[&a], pos_b[&b]))).collect());
        }
        let sums = &levels[n - 1];
        let mut generating = None;
        let mut news: Vec<Vec<Pt>> = vec![Vec::new(); n];
        for i in 0..n {
            let mut col: Collector<u32> = Collector::new();
            for (si, (s, _)) in sums.iter().enumerate() {
                let mut z = *s;
                z[i] = 0;
                if !self.cover[i].contains(space.encode(&z)) {
                    col.push(&space, &mut self.scratch, z, si as u32);
                }
            }
            let found = col.finish_all(&mut self.scratch);
            for (z, si) in &found {
                if z.iter().all(|&x| x == 0) && generating.is_none() {
                    generating = Some(i);
                }
                if self.prov.is_some() {
                    let selected = self.walk(&levels, *si as usize);
                    let d = Deriv { stage: self.stage, selected, sum: sums[*si as usize].0 };
                    self.prov.as_mut().unwrap().entry((i, *z)).or_insert(d);
                }
            }
            news[i] = found.into_iter().map(|x| x.0).collect();
        }
        let mut changed = false;
        for i in 0..n {
            if news[i].is_empty() {
                self.fresh[i].clear();
                continue;
            }
            changed = true;
            let mut col: Collector<()> = Collector::new();
            for p in self.members[i].iter().chain(news[i].iter()) {
                col.push(&space, &mut self.scratch, *p, ());
            }
            self.members[i] = col.finish_minimal(&space, &mut self.scratch).into_iter().map(|x| x.0).collect();
            self.cover[i] = upset_of(&space, &self.members[i]);
            self.fresh[i] = std::mem::take(&mut news[i]);
        }
        let total: usize = self.members.iter().map(Vec::len).sum();
        self.meter.set_size(total)?;
        Ok(self.conclude(generating, changed))
    }

    fn walk(&self, levels: &[Vec<(Pt, Link)>], pos: usize) -> Vec<Pt> {
        let n = self.n;
        let mut sel = vec![[0u32; MAX_DIM]; n];
        let mut k = n - 1;
        let mut pos = pos;
        loop {
            let (p, (prev, b)) = levels[k][pos];
            if k == 0 {
                sel[0] = p;
                break;
            }
            sel[k] = self.members[k][b as usize];
            pos = prev as usize;
            k -= 1;
        }
        sel
    }

    fn walk_full(&self, s: &Pt, space: &BoxSpace) -> Vec<Pt> {
        let n = self.n;
        let mut sel = vec![[0u32; MAX_DIM]; n];
        let mut cur = *s;
        for k in (1..n).rev() {
            let (a, b) = self.prefix_links[k][&space.encode(&cur)];
            sel[k] = b;
            cur = a;
        }
        sel[0] = cur;
        sel
    }

    fn step_full(&mut self) -> std::result::Result<Option<Verdict>, Resource> {
        let space = self.space.clone().expect("box checked in new");
        let n = self.n;
        self.stage += 1;
        self.meter.stage(self.stage)?;
        let track = self.prov.is_some();
        let mut delta: Vec<Pt> = self.fresh[0].clone();
        for k in 1..n {
            let pool_k: Vec<Pt> = self.cover[k].iter().map(|i| space.decode(i)).collect();
            let old_prev: Vec<Pt> = self.prefix[k - 1].iter().map(|i| space.decode(i)).collect();
            let fresh_k = self.fresh[k].clone();
            let skip = std::mem::replace(&mut self.prefix[k], Bits::new(0));
            let mut col = Collector::new();
            let r1 = self.sum_level(&space, &delta, &pool_k, &mut col, Some(&skip));
            let r2 = r1.and_then(|_| self.sum_level(&space, &old_prev, &fresh_k, &mut col, Some(&skip)));
            self.prefix[k] = skip;
            if let Err(e) = r2 {
                col.finish_all(&mut self.scratch);
                return Err(e);
            }
            for p in &delta {
                self.prefix[k - 1].insert(space.encode(p));
            }
            let next = col.finish_all(&mut self.scratch);
            if track {
                for (s, link) in &next {
                    self.prefix_links[k].insert(space.encode(s), *link);
                }
            }
            delta = next.into_iter().map(|x| x.0).collect();
        }
        for p in &delta {
            self.prefix[n - 1].insert(space.encode(p));
        }
        self.meter.set_size(self.prefix.iter().map(Bits::len).sum())?;
        let mut generating = None;
        let mut changed = false;
        for i in 0..n {
            let mut col: Collector<Pt> = Collector::new();
            for s in &delta {
                let mut z = *s;
                z[i] = 0;
                if !self.cover[i].contains(space.encode(&z)) {
                    col.push(&space, &mut self.scratch, z, *s);
                }
            }
            let found = col.finish_all(&mut self.scratch);
            for (z, s) in &found {
                self.cover[i].insert(space.encode(z));
                if z.iter().all(|&x| x == 0) && generating.is_none() {
                    generating = Some(i);
                }
                if track {
                    let selected = self.walk_full(s, &space);
                    let d = Deriv { stage: self.stage, selected, sum: *s };
                    self.prov.as_mut().unwrap().entry((i, *z)).or_insert(d);
                }
            }
            changed |= !found.is_empty();
            self.fresh[i] = found.into_iter().map(|x| x.0).collect();
        }
        for i in 0..n {
            if !self.fresh[i].is_empty() {
                self.members[i] = self.cover[i].iter().map(|x| space.decode(x)).collect();
            }
        }
        self.meter.set_size(self.cover.iter().map(Bits::len).sum())?;
        Ok(self.conclude(generating, changed))
    }

    fn conclude(&self, generating: Option<usize>, changed: bool) -> Option<Verdict> {
        if let Some(i) = generating {
            Some(Verdict::Generating { witness_index: i, stage: self.stage })
        } else if !changed {
            Some(Verdict::NotGenerating { fixpoint_stage: self.stage })
        } else {
            None
        }
    }

    pub fn state(&self) -> ReachState {
        let n = self.n;
        let conv = |v: &Vec<Pt>| v.iter().map(|p| pt_to(p, n)).collect::<Vec<_>>();
        let pools = (0..n)
            .map(|i| {
                let mut v = conv(&self.members[i]);
                let u = NatVec::unit(n, i).unwrap();
                if !v.contains(&u) {
                    v.push(u);
                }
                v.sort();
                v
            })
            .collect();
        let provenance = self.prov.as_ref().map(|m| {
            m.iter()
                .map(|((i, z), d)| {
                    let g = GeneralDerivation {
                        stage: d.stage,
                        selected: d.selected.iter().map(|p| pt_to(p, n)).collect(),
                        sum: pt_to(&d.sum, n),
                    };
                    ((*i, pt_to(z, n)), g)
                })
                .collect()
        });
        ReachState {
            h: self.h.clone(),
            mode: self.mode,
            stage: self.stage,
            pools,
            fresh: self.fresh.iter().map(conv).collect(),
            provenance,
        }
    }

    /// Membership of `v` in pool `i` (Full) or in its upward closure (Antichain).
    pub fn covers(&self, i: usize, v: &NatVec) -> bool {
        let (Some(space), Some(p)) = (&self.space, pt_from(v)) else { return false };
        space.contains(&p) && self.cover[i].contains(space.encode(&p))
    }
}

/// Run the general recursion on `h` to a verdict.
pub fn decide_general(h: &NatVec, opts: &DecideOptions) -> Result<GeneralRun> {
    let mut eng = GeneralEngine::new(h, opts)?;
    let verdict = eng.run();
    Ok(GeneralRun { verdict, state: eng.state() })
}
