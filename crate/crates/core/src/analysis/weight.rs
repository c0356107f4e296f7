use serde::Serialize;

use crate::error::{Error, Result};
use crate::nvec::NatVec;

use super::hp::Hp;
use super::phi::phi_real;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightParams {
    pub n: usize,
    pub lambda: f64,
    pub c_lambda: f64,
    pub phi_at_lambda: f64,
    /// `(λ^{n−1} − 1)/(λ − 1)`, the weight of `1̄_{n∖{i}}`.
    pub ones_weight: f64,
    /// Set when `φ_n` has no interior maximum (`n = 3`); values are limits at `λ → 1⁺`.
    pub boundary: bool,
}

fn c_of(n: f64, lambda: f64) -> f64 {
    lambda.powf(n - lambda) * lambda.ln() / (lambda - 1.0)
}

fn geometric(lambda: f64, m: f64) -> f64 {
    (lambda.powf(m) - 1.0) / (lambda - 1.0)
}

pub fn weight_params(n: usize, tol: f64) -> Result<WeightParams> {
    if n < 3 {
        return Err(Error::Domain(format!("the weight method needs n ≥ 3, got {n}")));
    }
    let p = phi_real(n, tol)?;
    let nf = n as f64;
    let w = if p.boundary {
        WeightParams { n, lambda: 1.0, c_lambda: 1.0, phi_at_lambda: p.value, ones_weight: nf - 1.0, boundary: true }
    } else {
        let l = p.x_star;
        WeightParams {
            n,
            lambda: l,
            c_lambda: c_of(nf, l),
            phi_at_lambda: p.value,
            ones_weight: geometric(l, nf - 1.0),
            boundary: false,
        }
    };
    if w.c_lambda > w.ones_weight * (1.0 + 1e-12) {
        return Err(Error::Numeric(format!(
            "n={n}: c_λ = {} exceeds (λ^(n−1) − 1)/(λ − 1) = {}",
            w.c_lambda, w.ones_weight
        )));
    }
    Ok(w)
}

/// `ξ_c(x) = (x − λ)c + (λ^{n−x} − 1)/(λ − 1)`.
pub fn xi(n: usize, lambda: f64, c: f64, x: f64) -> f64 {
    (x - lambda) * c + geometric(lambda, n as f64 - x)
}

/// `ζ(c) = min ξ_c`, in closed form.
pub fn zeta(n: usize, lambda: f64, c: f64) -> f64 {
    let ll = lambda.ln();
    (n as f64 - lambda + (ll.ln() - (lambda - 1.0).ln() + 1.0) / ll) * c - c.ln() / ll * c - 1.0 / (lambda - 1.0)
}

fn x_c(n: usize, lambda: f64, c: f64) -> f64 {
    let ll = lambda.ln();
    n as f64 + (ll.ln() - (lambda - 1.0).ln() - c.ln()) / ll
}

/// `|ζ(c_λ) − φ_n(λ)|` evaluated at high precision.
fn zeta_residual(n: usize, lambda: f64) -> f64 {
    let mut hp = Hp::new();
    let one = hp.num(1.0);
    let l = hp.num(lambda);
    let nn = hp.num(n as f64);
    let ll = hp.ln(&l);
    let lll = hp.ln(&ll);
    let lm1 = hp.sub(&l, &one);
    let ln_lm1 = hp.ln(&lm1);
    let pw = hp.exp(&hp.mul(&hp.sub(&nn, &l), &ll));
    let c = hp.div(&hp.mul(&pw, &ll), &lm1);
    let lc = hp.ln(&c);
    let a = hp.add(&hp.sub(&nn, &l), &hp.div(&hp.add(&hp.sub(&lll, &ln_lm1), &one), &ll));
    let z = hp.sub(&hp.sub(&hp.mul(&a, &c), &hp.mul(&hp.div(&lc, &ll), &c)), &hp.div(&one, &lm1));
    let phi = hp.div(&hp.sub(&pw, &one), &lm1);
    hp.to_f64(&hp.sub(&z, &phi)).abs()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrucialRow {
    pub k: usize,
    pub lhs: f64,
    pub margin: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrucialReport {
    pub params: WeightParams,
    pub eps: f64,
    pub rows: Vec<CrucialRow>,
    pub x_c: f64,
    /// `ξ_{c_λ}'(x_c)`, expected to vanish.
    pub xi_slope_at_x_c: f64,
    pub zeta_residual: f64,
    pub passed: bool,
}

/// Checks `(1/λ)(−ϕ(n) + (λ^{n−k} − 1)/(λ − 1) + k·c_λ) ≥ c_λ` for `1 < k < n`.
pub fn crucial_inequality_check(n: usize) -> Result<CrucialReport> {
    if n < 4 {
        return Err(Error::Domain(format!("the inequality is stated for n ≥ 4, got {n}")));
    }
    let p = weight_params(n, super::DEFAULT_TOL)?;
    let (l, c) = (p.lambda, p.c_lambda);
    let eps = 1e-9 * c.max(1.0);
    let rows: Vec<CrucialRow> = (2..n)
        .map(|k| {
            let lhs = (-p.phi_at_lambda + geometric(l, (n - k) as f64) + k as f64 * c) / l;
            CrucialRow { k, lhs, margin: lhs - c, ok: lhs >= c - eps }
        })
        .collect();
    let xc = x_c(n, l, c);
    let slope = c - l.powf(n as f64 - xc) * l.ln() / (l - 1.0);
    let zr = zeta_residual(n, l);
    let passed = rows.iter().all(|r| r.ok) && slope.abs() <= 1e-9 * c && zr <= 1e-9;
    Ok(CrucialReport { params: p, eps, rows, x_c: xc, xi_slope_at_x_c: slope, zeta_residual: zr, passed })
}

/// One column of the numeric table backing `c_λ ≤ (λ^{n−1} − 1)/(λ − 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightTableRow {
    pub n: usize,
    pub lambda: f64,
    pub phi_at_lambda: f64,
    pub c_lambda: f64,
    /// `c_λ` evaluated at `λ` rounded to two decimals.
    pub c_lambda_rounded: f64,
    pub ones_weight: f64,
    pub boundary: bool,
}

pub fn weight_table_row(n: usize) -> Result<WeightTableRow> {
    let p = weight_params(n, super::DEFAULT_TOL)?;
    let rounded = (p.lambda * 100.0).round() / 100.0;
    let c_rounded = if p.boundary || rounded <= 1.0 { p.c_lambda } else { c_of(n as f64, rounded) };
    Ok(WeightTableRow {
        n,
        lambda: p.lambda,
        phi_at_lambda: p.phi_at_lambda,
        c_lambda: p.c_lambda,
        c_lambda_rounded: c_rounded,
        ones_weight: p.ones_weight,
        boundary: p.boundary,
    })
}

/// `w(f) = min_σ Σ λ^i f(σ(i))`: the largest entries take the smallest powers.
pub fn weight(f: &NatVec, lambda: f64) -> Result<f64> {
    if !(lambda > 1.0) {
        return Err(Error::Domain(format!("weight needs λ > 1, got {lambda}")));
    }
    let mut e = f.entries().to_vec();
    e.sort_unstable_by(|a, b| b.cmp(a));
    let mut pw = 1.0;
    let mut s = 0.0;
    for v in e {
        s += pw * v as f64;
        pw *= lambda;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_weight() {
        let l = 1.7;
        for n in 2..=6 {
            for i in 0..n {
                let mut e = vec![1u64; n];
                e[i] = 0;
                let w = weight(&NatVec::new(e).unwrap(), l).unwrap();
                assert!((w - geometric(l, (n - 1) as f64)).abs() < 1e-12);
            }
        }
        let w = weight(&NatVec::constant(4, 3), 2.0).unwrap();
        assert!((w - 3.0 * 15.0).abs() < 1e-12);
    }

    #[test]
    fn params_n5() {
        let p = weight_params(5, 1e-13).unwrap();
        assert!((p.lambda - 1.93).abs() < 0.01);
        assert!((p.phi_at_lambda - 7.01).abs() < 0.01);
        assert!((p.c_lambda - 5.32).abs() < 0.02);
    }

    #[test]
    fn crucial_small() {
        for n in [5, 10] {
            let r = crucial_inequality_check(n).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn xi_minimum_at_x_c() {
        let p = weight_params(7, 1e-13).unwrap();
        let xc = x_c(7, p.lambda, p.c_lambda);
        let z = zeta(7, p.lambda, p.c_lambda);
        assert!((xi(7, p.lambda, p.c_lambda, xc) - z).abs() < 1e-9);
        assert!(xi(7, p.lambda, p.c_lambda, xc + 0.1) > z);
        assert!(xi(7, p.lambda, p.c_lambda, xc - 0.1) > z);
    }
}
