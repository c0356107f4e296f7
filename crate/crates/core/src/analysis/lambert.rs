use crate::error::{Error, Result};

/// Principal branch of `W` for `x > 0`, by Halley iteration.
pub fn lambert_w(x: f64, tol: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("lambert_w needs a finite x > 0, got {x}")));
    }
    let mut w = if x < std::f64::consts::E {
        (1.0 + x).ln() * 0.75
    } else {
        let l = x.ln();
        l - l.ln()
    };
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= tol * w.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    let r = (w * w.exp() - x).abs();
    if r > 1e3 * tol.max(f64::EPSILON) * x {
        return Err(Error::Numeric(format!("lambert_w({x}) residual {r:e}")));
    }
    Ok(w)
}

/// Asymptotic expansion of `W(x)` with `L = ln x`, `l = ln ln x`, through the `(l/L)^4` term.
pub fn lambert_w_series(x: f64) -> f64 {
    let big = x.ln();
    let l = big.ln();
    big - l
        + l / big
        + l * (-2.0 + l) / (2.0 * big.powi(2))
        + l * (6.0 - 9.0 * l + 2.0 * l * l) / (6.0 * big.powi(3))
        + l * (-12.0 + 36.0 * l - 22.0 * l * l + 3.0 * l.powi(3)) / (12.0 * big.powi(4))
}
