//! Growth of φ and ϕ, the Lambert W function, the asymptotic bounds on
//! `ln ϕ(n+1)`, and the weight method.

mod bounds;
mod hp;
mod lambert;
mod phi;
mod weight;

pub use bounds::{
    ln_factorial_bounds, ln_factorial_exact, phi_asymptotic_bounds, psi_max, BoundInterval, FactorialBounds, PsiMax,
};
pub use lambert::{lambert_w, lambert_w_series};
pub use phi::{ln_phi_n, phi_n, phi_n_log_derivative, phi_real, varphi_int, PhiEval, VarphiInt};
pub use weight::{
    crucial_inequality_check, weight_table_row, weight, weight_params, xi, zeta, CrucialReport, CrucialRow, WeightTableRow, WeightParams,
};

/// Default relative tolerance for the real optimizers.
pub const DEFAULT_TOL: f64 = 1e-13;
