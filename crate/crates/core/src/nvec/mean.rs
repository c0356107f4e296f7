use std::fmt;

use crate::error::{Error, Result};

use super::{NatVec, Rational};

/// Degree `q` of a power mean.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeanDegree {
    NegInf,
    Harmonic,
    Arithmetic,
    PosInf,
    Real(f64),
}

impl MeanDegree {
    pub fn from_f64(q: f64) -> Self {
        if q == f64::NEG_INFINITY {
            MeanDegree::NegInf
        } else if q == f64::INFINITY {
            MeanDegree::PosInf
        } else if q == -1.0 {
            MeanDegree::Harmonic
        } else if q == 1.0 {
            MeanDegree::Arithmetic
        } else {
            MeanDegree::Real(q)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeanValue {
    Exact(Rational),
    Approx(f64),
}

impl MeanValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            MeanValue::Exact(r) => r.to_f64(),
            MeanValue::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            MeanValue::Exact(r) => Some(r),
            MeanValue::Approx(_) => None,
        }
    }
}

impl fmt::Display for MeanValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanValue::Exact(r) => write!(f, "{r}"),
            MeanValue::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// `M_q(f)`. Exact for `q ∈ {−∞, −1, 1, +∞}`.
pub fn mean(q: MeanDegree, f: &NatVec) -> Result<MeanValue> {
    if f.is_zero() {
        return Err(Error::Domain("mean of the zero vector".into()));
    }
    let negative = match q {
        MeanDegree::NegInf | MeanDegree::Harmonic => true,
        MeanDegree::Real(x) => x < 0.0,
        _ => false,
    };
    if negative && f.entries().contains(&0) {
        return Err(Error::Domain(format!("zero entry in {f} with negative degree")));
    }
    let n = f.dim() as u64;
    Ok(match q {
        MeanDegree::NegInf => MeanValue::Exact(Rational::from(f.min_entry())),
        MeanDegree::PosInf => MeanValue::Exact(Rational::from(f.norm())),
        MeanDegree::Arithmetic => {
            let s: u64 = f.entries().iter().sum();
            MeanValue::Exact(Rational::from(s) / Rational::from(n))
        }
        MeanDegree::Harmonic => MeanValue::Exact(harmonic_mean(f)?),
        MeanDegree::Real(0.0) => {
            let l: f64 = f.entries().iter().map(|&x| (x as f64).ln()).sum::<f64>() / n as f64;
            MeanValue::Approx(l.exp())
        }
        MeanDegree::Real(q) => {
            let s: f64 = f.entries().iter().map(|&x| (x as f64).powf(q)).sum::<f64>() / n as f64;
            MeanValue::Approx(s.powf(1.0 / q))
        }
    })
}

/// `M_{−1}(f) = n / Σ 1/f(i)`.
pub fn harmonic_mean(f: &NatVec) -> Result<Rational> {
    let mut s = Rational::zero();
    for &x in f.entries() {
        if x == 0 {
            return Err(Error::Domain(format!("zero entry in {f}")));
        }
        s = s + Rational::from(x).recip()?;
    }
    Ok(Rational::from(f.dim() as u64) / s)
}
