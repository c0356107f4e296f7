use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::hp::Hp;

const MAX_ITER: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarphiInt {
    pub n: usize,
    /// Smallest maximizing `k` (0 when `n = 1`).
    pub k_star: u64,
    #[serde(serialize_with = "ser_big")]
    pub value: BigUint,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `φ(n) = max_{0<k<n} Σ_{i<n−k} k^i`, exactly.
pub fn varphi_int(n: usize) -> VarphiInt {
    let mut best = VarphiInt { n, k_star: 0, value: BigUint::zero() };
    for k in 1..n {
        let kb = BigUint::from(k);
        let mut term = BigUint::one();
        let mut sum = BigUint::zero();
        for _ in 0..(n - k) {
            sum += &term;
            term *= &kb;
        }
        if sum > best.value {
            best = VarphiInt { n, k_star: k as u64, value: sum };
        }
    }
    best
}

/// Real maximum of `φ_n(x) = (x^{n−x} − 1)/(x − 1)` on `(1, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhiEval {
    pub n: usize,
    /// Argmax; `1.0` when the supremum is the limit `n − 1` at `x → 1⁺`.
    pub x_star: f64,
    pub value: f64,
    pub ln_value: f64,
    /// Absolute bound on the error of `ln_value` as a value of `ln ϕ(n)`.
    pub ln_err: f64,
    pub boundary: bool,
}

impl PhiEval {
    /// `1 + ⌊ϕ(n)⌋`.
    pub fn one_plus_floor(&self) -> u64 {
        1 + self.value.floor() as u64
    }
}

/// `ln φ_n(x)` evaluated at high precision and rounded to `f64`.
pub(crate) fn ln_phi_n_hp(hp: &mut Hp, n: f64, x: f64) -> f64 {
    let xb = hp.num(x);
    let one = hp.num(1.0);
    let lx = hp.ln(&xb);
    let u = hp.mul(&hp.sub(&hp.num(n), &xb), &lx);
    let e = hp.exp(&u.neg());
    let tail = hp.ln(&hp.sub(&one, &e));
    let den = hp.ln(&hp.sub(&xb, &one));
    hp.to_f64(&hp.sub(&hp.add(&u, &tail), &den))
}

pub fn ln_phi_n(n: f64, x: f64) -> f64 {
    let u = (n - x) * x.ln();
    u + (-(-u).exp()).ln_1p() - (x - 1.0).ln()
}

pub fn phi_n(n: f64, x: f64) -> f64 {
    let u = (n - x) * x.ln();
    u.exp_m1() / (x - 1.0)
}

/// `d/dx ln φ_n(x)`; same sign as `φ_n'`.
pub fn phi_n_log_derivative(n: f64, x: f64) -> f64 {
    let u = (n - x) * x.ln();
    let du = (n - x) / x - x.ln();
    du / -(-u).exp_m1() - 1.0 / (x - 1.0)
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..MAX_ITER {
        if b - a <= tol * b.abs().max(1.0) {
            break;
        }
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    (a + b) / 2.0
}

/// `ϕ(n)`: bisection on the sign of `φ_n'`, golden section when it does not change sign.
pub fn phi_real(n: usize, tol: f64) -> Result<PhiEval> {
    if n == 0 {
        return Err(Error::Domain("ϕ(n) needs n ≥ 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let boundary_value = (n - 1) as f64;
    let boundary = PhiEval {
        n,
        x_star: 1.0,
        value: boundary_value,
        ln_value: boundary_value.ln(),
        ln_err: 0.0,
        boundary: true,
    };
    if n <= 2 {
        return Ok(boundary);
    }
    let nf = n as f64;
    let eps = 1e-9;
    let (mut a, mut b) = (1.0 + eps, nf - eps);
    let da = phi_n_log_derivative(nf, a);
    let db = phi_n_log_derivative(nf, b);
    let (x, err) = if da > 0.0 && db < 0.0 {
        for _ in 0..MAX_ITER {
            if b - a <= tol * b {
                break;
            }
            let m = 0.5 * (a + b);
            if phi_n_log_derivative(nf, m) > 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        if b - a > tol * b * 4.0 {
            return Err(Error::Numeric(format!("ϕ({n}): bisection did not converge")));
        }
        let x = 0.5 * (a + b);
        // ln φ_n is increasing on [a, x*] and decreasing after, so its
        // maximum over [a, b] is at most ln φ_n(a) + g'(a)(b − a).
        let excess = (ln_phi_n(nf, a) + phi_n_log_derivative(nf, a) * (b - a) - ln_phi_n(nf, x)).max(0.0);
        (x, excess)
    } else {
        (golden_max(|x| ln_phi_n(nf, x), a, b, tol), f64::NAN)
    };
    let ln_value = ln_phi_n_hp(&mut Hp::new(), nf, x);
    let value = phi_n(nf, x);
    if !err.is_nan() && value > boundary_value {
        let ln_err = err + 2.0 * f64::EPSILON * ln_value.abs().max(1.0);
        return Ok(PhiEval { n, x_star: x, value, ln_value, ln_err, boundary: false });
    }
    if value > boundary_value {
        Ok(PhiEval { n, x_star: x, value, ln_value, ln_err: tol * ln_value.abs(), boundary: false })
    } else {
        Ok(boundary)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn varphi_table() {
        let got: Vec<u64> = (1..=10).map(|n| varphi_int(n).value.try_into().unwrap()).collect();
        assert_eq!(got, vec![0, 1, 2, 3, 7, 15, 40, 121, 364, 1365]);
        assert_eq!(varphi_int(7).k_star, 3);
    }

    #[test]
    fn varphi_large_is_exact() {
        let v = varphi_int(80).value;
        assert!(v.bits() > 64);
    }

    #[test]
    fn phi_real_table() {
        let got: Vec<u64> = (1..=9).map(|n| phi_real(n, 1e-13).unwrap().one_plus_floor()).collect();
        assert_eq!(got, vec![1, 2, 3, 4, 8, 17, 42, 122, 395]);
    }

    #[test]
    fn phi_dominates_varphi() {
        for n in 2..=12 {
            let r = phi_real(n, 1e-13).unwrap().value;
            let i: f64 = varphi_int(n).value.to_string().parse().unwrap();
            assert!(r >= i, "n={n}");
        }
    }

    #[test]
    fn stationary_at_argmax() {
        for n in 4..=40 {
            let p = phi_real(n, 1e-14).unwrap();
            let nf = n as f64;
            let h = 1e-6;
            assert!(phi_n_log_derivative(nf, p.x_star - h) > 0.0);
            assert!(phi_n_log_derivative(nf, p.x_star + h) < 0.0);
        }
    }

    #[test]
    fn high_precision_matches_f64() {
        let mut hp = Hp::new();
        for (n, x) in [(5.0, 1.9), (52.0, 12.3), (501.0, 80.0)] {
            let d = ln_phi_n_hp(&mut hp, n, x);
            assert!((d - ln_phi_n(n, x)).abs() < 1e-12 * d.abs());
        }
    }
}
