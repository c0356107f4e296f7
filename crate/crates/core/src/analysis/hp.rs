use astro_float::{BigFloat, Consts, RoundingMode};

/// Working precision in bits for the high-precision evaluations.
pub const PREC: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

/// High-precision evaluation context.
pub struct Hp {
    cc: Consts,
}

impl Hp {
    pub fn new() -> Self {
        Hp { cc: Consts::new().expect("astro-float constants cache") }
    }

    pub fn num(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, PREC)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, PREC, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, PREC, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, PREC, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, PREC, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(PREC, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(PREC, RM, &mut self.cc)
    }

    pub fn to_f64(&self, a: &BigFloat) -> f64 {
        a.to_string().parse().unwrap_or(f64::NAN)
    }
}
