use crate::nvec::lattice::{pt_le, pt_sum, BoxSpace, Bits, Pt};

const PAIRWISE_MAX: usize = 4096;

/// Collects distinct points (first occurrence wins) using a shared scratch bit-set.
pub(crate) struct Collector<T> {
    items: Vec<(usize, Pt, T)>,
}

impl<T: Copy> Collector<T> {
    pub fn new() -> Self {
        Collector { items: Vec::new() }
    }

    #[inline]
    pub fn push(&mut self, space: &BoxSpace, scratch: &mut Bits, p: Pt, t: T) -> bool {
        let idx = space.encode(&p);
        if scratch.insert(idx) {
            self.items.push((idx, p, t));
            true
        } else {
            false
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// All collected points in lexicographic order; clears `scratch`.
    pub fn finish_all(mut self, scratch: &mut Bits) -> Vec<(Pt, T)> {
        for (idx, _, _) in &self.items {
            scratch.remove(*idx);
        }
        self.items.sort_unstable_by_key(|x| x.0);
        self.items.into_iter().map(|(_, p, t)| (p, t)).collect()
    }

    /// The `≤`-minimal collected points in lexicographic order; clears `scratch`.
    pub fn finish_minimal(self, space: &BoxSpace, scratch: &mut Bits) -> Vec<(Pt, T)> {
        let uniq = self.items;
        let n = space.n;
        if uniq.len() <= PAIRWISE_MAX {
            for (idx, _, _) in &uniq {
                scratch.remove(*idx);
            }
            let mut order: Vec<usize> = (0..uniq.len()).collect();
            order.sort_unstable_by_key(|&k| (pt_sum(&uniq[k].1), uniq[k].0));
            let mut kept: Vec<usize> = Vec::new();
            for k in order {
                if !kept.iter().any(|&q| pt_le(&uniq[q].1, &uniq[k].1, n)) {
                    kept.push(k);
                }
            }
            kept.sort_unstable_by_key(|&k| uniq[k].0);
            kept.into_iter().map(|k| (uniq[k].1, uniq[k].2)).collect()
        } else {
            let min = space.minimal(scratch);
            for (idx, _, _) in &uniq {
                scratch.remove(*idx);
            }
            let mut kept: Vec<(usize, Pt, T)> = uniq.into_iter().filter(|(i, _, _)| min.contains(*i)).collect();
            kept.sort_unstable_by_key(|x| x.0);
            kept.into_iter().map(|(_, p, t)| (p, t)).collect()
        }
    }
}

/// Deduplicate `items` (first occurrence wins) and keep the `≤`-minimal points,
/// in lexicographic order. `scratch` must be empty on entry and is left empty.
#[cfg(test)]
pub(crate) fn minimal_with<T: Copy>(
    space: &BoxSpace,
    items: Vec<(Pt, T)>,
    scratch: &mut Bits,
) -> Vec<(Pt, T)> {
    let mut c = Collector::new();
    for (p, t) in items {
        c.push(space, scratch, p, t);
    }
    c.finish_minimal(space, scratch)
}

/// `↑pts ∩ box` as a bit-set.
pub(crate) fn upset_of(space: &BoxSpace, pts: &[Pt]) -> Bits {
    let mut b = Bits::new(space.size);
    for p in pts {
        b.insert(space.encode(p));
    }
    space.upset(&b)
}
