use serde::Serialize;

use crate::error::{Error, Result};

use super::hp::Hp;
use super::lambert::lambert_w;
use super::phi::{ln_phi_n, phi_real};

const W_TOL: f64 = 1e-16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PsiMax {
    pub n: usize,
    pub w_ne: f64,
    pub x_psi: f64,
    /// `ln ψ_n(x_ψ) = nW(ne) − 2n + n/W(ne)`.
    pub ln_value: f64,
}

/// Maximum of `ln ψ_n(x) = (n − x) ln x`.
pub fn psi_max(n: usize) -> Result<PsiMax> {
    if n == 0 {
        return Err(Error::Domain("psi_max needs n ≥ 1".into()));
    }
    let nf = n as f64;
    let w = lambert_w(nf * std::f64::consts::E, W_TOL)?;
    Ok(PsiMax { n, w_ne: w, x_psi: nf / w, ln_value: nf * w - 2.0 * nf + nf / w })
}

/// Brackets on `ln ϕ(n+1)` with the diagnostics behind them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundInterval {
    pub n: usize,
    pub w_ne: f64,
    pub lower: f64,
    pub upper: f64,
    /// Absolute error bound on `lower` and `upper`.
    pub bound_err: f64,
    /// `ln ϕ(n+1)` and its error bound.
    pub ln_phi: f64,
    pub ln_phi_err: f64,
    pub x_psi: f64,
    pub x_phi: f64,
    /// `n/ln n + 1`, the left end of the bracket on `x_φ`.
    pub x_phi_lower: f64,
    /// `ln(φ_{n+1}(x_φ)/ψ_n(x_φ))`, to be below `ln n / n`.
    pub ratio_at_x_phi: f64,
    /// `ln(φ_{n+1}(x_ψ)/ψ_n(x_ψ))`, to be above `W(ne)/n`.
    pub ratio_at_x_psi: f64,
    /// False below `n = 51`, where the bounds are not claimed.
    pub in_range: bool,
}

impl BoundInterval {
    /// `lower < ln ϕ(n+1) < upper`, each side clearing both error bounds.
    pub fn sandwich_holds(&self) -> bool {
        let e = self.bound_err + self.ln_phi_err;
        self.lower + e < self.ln_phi && self.ln_phi + e < self.upper
    }

    pub fn x_phi_bracket_holds(&self) -> bool {
        self.x_phi_lower < self.x_phi && self.x_phi < self.x_psi
    }

    pub fn ratio_bounds_hold(&self) -> bool {
        let nf = self.n as f64;
        self.ratio_at_x_phi < nf.ln() / nf && self.ratio_at_x_psi > self.w_ne / nf
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

pub fn phi_asymptotic_bounds(n: usize) -> Result<BoundInterval> {
    if n < 2 {
        return Err(Error::Domain("phi_asymptotic_bounds needs n ≥ 2".into()));
    }
    let nf = n as f64;
    let psi = psi_max(n)?;
    let w = psi.w_ne;
    let (lower, upper) = bounds_hp(nf, w);
    let bound_err = 2.0 * f64::EPSILON * upper.abs().max(1.0);
    let phi = phi_real(n + 1, 1e-15)?;
    let ln_psi = |x: f64| (nf - x) * x.ln();
    Ok(BoundInterval {
        n,
        w_ne: w,
        lower,
        upper,
        bound_err,
        ln_phi: phi.ln_value,
        ln_phi_err: phi.ln_err,
        x_psi: psi.x_psi,
        x_phi: phi.x_star,
        x_phi_lower: nf / nf.ln() + 1.0,
        ratio_at_x_phi: ln_phi_n(nf + 1.0, phi.x_star) - ln_psi(phi.x_star),
        ratio_at_x_psi: ln_phi_n(nf + 1.0, psi.x_psi) - ln_psi(psi.x_psi),
        in_range: n >= 51,
    })
}

/// Both bracket expressions at high precision, with `W(ne)` refined by one Newton step
/// from the `f64` value (error well below `f64` resolution afterwards).
fn bounds_hp(nf: f64, w0: f64) -> (f64, f64) {
    let mut hp = Hp::new();
    let one = hp.num(1.0);
    let n = hp.num(nf);
    let ne = hp.exp(&one);
    let ne = hp.mul(&n, &ne);
    let mut w = hp.num(w0);
    for _ in 0..2 {
        let ew = hp.exp(&w);
        let f = hp.sub(&hp.mul(&w, &ew), &ne);
        let d = hp.mul(&ew, &hp.add(&w, &one));
        w = hp.sub(&w, &hp.div(&f, &d));
    }
    let two_n = hp.mul(&hp.num(2.0), &n);
    let core = hp.add(&hp.sub(&hp.mul(&n, &w), &two_n), &hp.div(&n, &w));
    let lower = hp.add(&core, &hp.div(&w, &n));
    let lne = hp.ln(&ne);
    let llne = hp.ln(&lne);
    let upper = hp.add(&lower, &hp.div(&llne, &n));
    (hp.to_f64(&lower), hp.to_f64(&upper))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FactorialBounds {
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    /// Upper bound on `ln ϕ(n)` from the asymptotic bracket at `n − 1`.
    pub ln_phi_upper: Option<f64>,
}

/// Two-sided bounds on `ln n!`.
pub fn ln_factorial_bounds(n: usize) -> Result<FactorialBounds> {
    if n == 0 {
        return Err(Error::Domain("ln_factorial_bounds needs n ≥ 1".into()));
    }
    let nf = n as f64;
    let base = nf * nf.ln() - nf + 0.5 * nf.ln() + 0.5 * std::f64::consts::TAU.ln();
    let lower = base + 1.0 / (12.0 * nf + 1.0);
    let upper = base + nf.ln() / nf + 1.0 / (12.0 * nf);
    let ln_phi_upper = if n >= 3 { Some(phi_asymptotic_bounds(n - 1)?.upper) } else { None };
    Ok(FactorialBounds { n, lower, upper, ln_phi_upper })
}

pub fn ln_factorial_exact(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}
