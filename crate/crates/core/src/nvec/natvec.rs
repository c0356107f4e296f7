use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A function `n → ω`, stored as `n` unsigned entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatVec(Vec<u64>);

impl NatVec {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::BadDimension { got: 0, max: usize::MAX });
        }
        Ok(NatVec(entries))
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        NatVec(vec![0; n])
    }

    pub fn constant(n: usize, c: u64) -> Self {
        assert!(n >= 1, "dimension must be positive");
        NatVec(vec![c; n])
    }

    /// `1_i`.
    pub fn unit(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        let mut v = vec![0; n];
        v[i] = 1;
        Ok(NatVec(v))
    }

    /// Characteristic function `1̄_J` of an index set.
    pub fn indicator(n: usize, set: &[usize]) -> Result<Self> {
        let mut v = vec![0; n];
        for &j in set {
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, dim: n });
            }
            v[j] = 1;
        }
        NatVec::new(v)
    }

    /// `1̄_{n∖k}`: zeros on `0..k`, ones on `k..n`.
    pub fn indicator_tail(n: usize, k: usize) -> Self {
        let v = (0..n).map(|i| u64::from(i >= k)).collect();
        NatVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    /// `‖f‖ = max_i f(i)`.
    pub fn norm(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn min_entry(&self) -> u64 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Orbit representative: entries sorted ascending.
    pub fn canonical(&self) -> NatVec {
        let mut v = self.0.clone();
        v.sort_unstable();
        NatVec(v)
    }

    pub fn is_monotone(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    fn check_dim(&self, other: &NatVec) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(())
    }

    /// `self < h`: strictly smaller in every coordinate.
    pub fn strictly_below(&self, h: &NatVec) -> Result<bool> {
        self.check_dim(h)?;
        Ok(self.0.iter().zip(&h.0).all(|(a, b)| a < b))
    }

    /// `self ≥ other` coordinatewise.
    pub fn dominates(&self, other: &NatVec) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a >= b))
    }

    pub fn checked_add(&self, other: &NatVec) -> Result<NatVec> {
        self.check_dim(other)?;
        let mut out = Vec::with_capacity(self.dim());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(*b).ok_or_else(|| Error::Domain("entry overflow".into()))?);
        }
        Ok(NatVec(out))
    }

    pub fn scale(&self, k: u64) -> NatVec {
        NatVec(self.0.iter().map(|x| x * k).collect())
    }

    /// `x − x(i)·1_i`.
    pub fn zero_at(&self, i: usize) -> NatVec {
        let mut v = self.0.clone();
        v[i] = 0;
        NatVec(v)
    }

    /// `f∘σ`, i.e. `(f∘σ)(i) = f(σ(i))`.
    pub fn compose(&self, sigma: &[usize]) -> Result<NatVec> {
        check_permutation(sigma, self.dim())?;
        Ok(NatVec(sigma.iter().map(|&s| self.0[s]).collect()))
    }

    /// The shift `S f = (0, f(0), …, f(n−2))`.
    pub fn shift(&self) -> NatVec {
        let n = self.dim();
        let mut v = vec![0; n];
        v[1..n].copy_from_slice(&self.0[..n - 1]);
        NatVec(v)
    }
}

/// The cyclic permutation with `σ(0) = n−1` and `σ(i) = i−1` otherwise.
pub fn cyclic_permutation(n: usize) -> Vec<usize> {
    (0..n).map(|i| if i == 0 { n - 1 } else { i - 1 }).collect()
}

pub fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::DimensionMismatch { left: sigma.len(), right: n });
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::Domain(format!("{sigma:?} is not a permutation of 0..{n}")));
        }
        seen[s] = true;
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

impl fmt::Display for NatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for NatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for NatVec {
    type Err = Error;

    /// Accepts `2,3,7` and `(2,3,7)`, whitespace tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').map(|r| r.strip_suffix(')')).unwrap_or(Some(t));
        let t = t.ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
        if t.trim().is_empty() {
            return Err(Error::Parse(format!("empty vector literal {s:?}")));
        }
        let entries = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad entry {:?} in {s:?}", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        NatVec::new(entries)
    }
}

impl From<&[u64]> for NatVec {
    fn from(v: &[u64]) -> Self {
        NatVec::new(v.to_vec()).expect("non-empty slice")
    }
}

impl<const N: usize> From<[u64; N]> for NatVec {
    fn from(v: [u64; N]) -> Self {
        NatVec::new(v.to_vec()).expect("non-empty array")
    }
}

impl Serialize for NatVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NatVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(d)?;
        NatVec::new(v).map_err(serde::de::Error::custom)
    }
}
