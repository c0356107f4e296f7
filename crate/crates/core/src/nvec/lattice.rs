//! Fixed-width points, mixed-radix boxes and dense bit-sets used by the engine.

use super::NatVec;

pub const MAX_DIM: usize = 8;

/// Largest box (in points) that is ever allocated densely.
pub const DENSE_LIMIT: usize = 1 << 31;

pub type Pt = [u32; MAX_DIM];

pub fn pt_from(v: &NatVec) -> Option<Pt> {
    if v.dim() > MAX_DIM {
        return None;
    }
    let mut p = [0u32; MAX_DIM];
    for (i, &x) in v.entries().iter().enumerate() {
        p[i] = u32::try_from(x).ok()?;
    }
    Some(p)
}

pub fn pt_to(p: &Pt, n: usize) -> NatVec {
    NatVec::new(p[..n].iter().map(|&x| u64::from(x)).collect()).expect("n >= 1")
}

#[inline]
pub fn pt_le(a: &Pt, b: &Pt, n: usize) -> bool {
    (0..n).all(|i| a[i] <= b[i])
}

#[inline]
pub fn pt_add(a: &Pt, b: &Pt) -> Pt {
    let mut out = [0u32; MAX_DIM];
    for i in 0..MAX_DIM {
        out[i] = a[i] + b[i];
    }
    out
}

#[inline]
pub fn pt_sum(a: &Pt) -> u64 {
    a.iter().map(|&x| u64::from(x)).sum()
}

pub fn pt_sorted(p: &Pt, n: usize) -> Pt {
    let mut q = *p;
    q[..n].sort_unstable();
    q
}

pub fn pt_compose(p: &Pt, sigma: &[usize]) -> Pt {
    let mut q = [0u32; MAX_DIM];
    for (i, &s) in sigma.iter().enumerate() {
        q[i] = p[s];
    }
    q
}

/// Minimal elements of a point list; output sorted lexicographically.
pub fn reduce_min(mut pts: Vec<Pt>, n: usize) -> Vec<Pt> {
    pts.sort_unstable_by_key(|p| (pt_sum(p), *p));
    pts.dedup();
    let mut kept: Vec<Pt> = Vec::new();
    for p in pts {
        if !kept.iter().any(|q| pt_le(q, &p, n)) {
            kept.push(p);
        }
    }
    kept.sort_unstable();
    kept
}

/// The box `{x : x(i) < caps(i)}` indexed in mixed radix, coordinate 0 most significant.
#[derive(Clone, Debug)]
pub struct BoxSpace {
    pub n: usize,
    pub caps: Pt,
    pub strides: [usize; MAX_DIM],
    pub size: usize,
}

impl BoxSpace {
    pub fn new(caps: &[u64]) -> Option<Self> {
        let n = caps.len();
        if n == 0 || n > MAX_DIM {
            return None;
        }
        let mut c = [1u32; MAX_DIM];
        let mut strides = [0usize; MAX_DIM];
        let mut size: usize = 1;
        for i in (0..n).rev() {
            c[i] = u32::try_from(caps[i]).ok()?;
            strides[i] = size;
            size = size.checked_mul(caps[i] as usize)?;
            if size > DENSE_LIMIT {
                return None;
            }
        }
        Some(BoxSpace { n, caps: c, strides, size })
    }

    #[inline]
    pub fn contains(&self, p: &Pt) -> bool {
        (0..self.n).all(|i| p[i] < self.caps[i])
    }

    #[inline]
    pub fn encode(&self, p: &Pt) -> usize {
        (0..self.n).map(|i| p[i] as usize * self.strides[i]).sum()
    }

    #[inline]
    pub fn decode(&self, mut idx: usize) -> Pt {
        let mut p = [0u32; MAX_DIM];
        for i in 0..self.n {
            p[i] = (idx / self.strides[i]) as u32;
            idx %= self.strides[i];
        }
        p
    }

    /// `↑set ∩ box`, by one sweep in index order.
    pub fn upset(&self, set: &Bits) -> Bits {
        let mut up = Bits::new(self.size);
        if self.size == 0 {
            return up;
        }
        let mut digits = [0u32; MAX_DIM];
        for idx in 0..self.size {
            let mut hit = set.contains(idx);
            if !hit {
                for i in 0..self.n {
                    if digits[i] > 0 && up.contains(idx - self.strides[i]) {
                        hit = true;
                        break;
                    }
                }
            }
            if hit {
                up.insert(idx);
            }
            self.bump(&mut digits);
        }
        up
    }

    /// Minimal elements of `set`, as a bit-set.
    pub fn minimal(&self, set: &Bits) -> Bits {
        let up = self.upset(set);
        let mut out = Bits::new(self.size);
        for idx in set.iter() {
            let p = self.decode(idx);
            let dominated = (0..self.n).any(|i| p[i] > 0 && up.contains(idx - self.strides[i]));
            if !dominated {
                out.insert(idx);
            }
        }
        out
    }

    #[inline]
    fn bump(&self, digits: &mut [u32; MAX_DIM]) {
        for i in (0..self.n).rev() {
            digits[i] += 1;
            if digits[i] < self.caps[i] {
                return;
            }
            digits[i] = 0;
        }
    }
}

/// Dense bit-set with a population count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits {
    words: Vec<u64>,
    count: usize,
}

impl Bits {
    pub fn new(size: usize) -> Self {
        Bits { words: vec![0; size.div_ceil(64)], count: 0 }
    }

    #[inline]
    pub fn contains(&self, idx: usize) -> bool {
        self.words[idx >> 6] >> (idx & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, idx: usize) -> bool {
        let w = &mut self.words[idx >> 6];
        let m = 1u64 << (idx & 63);
        if *w & m != 0 {
            return false;
        }
        *w |= m;
        self.count += 1;
        true
    }

    pub fn remove(&mut self, idx: usize) -> bool {
        let w = &mut self.words[idx >> 6];
        let m = 1u64 << (idx & 63);
        if *w & m == 0 {
            return false;
        }
        *w &= !m;
        self.count -= 1;
        true
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.count = 0;
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Pt {
        let mut q = [0; MAX_DIM];
        q[..v.len()].copy_from_slice(v);
        q
    }

    #[test]
    fn encode_is_lexicographic() {
        let s = BoxSpace::new(&[2, 3, 4]).unwrap();
        assert_eq!(s.size, 24);
        let mut prev = None;
        for idx in 0..s.size {
            let q = s.decode(idx);
            assert_eq!(s.encode(&q), idx);
            if let Some(pr) = prev {
                assert!(pr < q);
            }
            prev = Some(q);
        }
    }

    #[test]
    fn minimal_matches_pairwise() {
        let s = BoxSpace::new(&[4, 4, 4]).unwrap();
        let pts = vec![p(&[1, 1, 0]), p(&[1, 2, 0]), p(&[0, 3, 3]), p(&[2, 0, 1]), p(&[3, 3, 3])];
        let mut b = Bits::new(s.size);
        for q in &pts {
            b.insert(s.encode(q));
        }
        let dense: Vec<Pt> = s.minimal(&b).iter().map(|i| s.decode(i)).collect();
        assert_eq!(dense, reduce_min(pts, 3));
        assert_eq!(dense.len(), 3);
    }

    #[test]
    fn bits_iterate_in_order() {
        let mut b = Bits::new(200);
        for i in [150, 3, 64, 65] {
            assert!(b.insert(i));
        }
        assert!(!b.insert(3));
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![3, 64, 65, 150]);
        assert!(b.remove(64));
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn oversized_box_rejected() {
        assert!(BoxSpace::new(&[1 << 20, 1 << 20]).is_none());
        assert!(BoxSpace::new(&[]).is_none());
    }
}
