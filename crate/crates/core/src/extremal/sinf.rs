use num_traits::ToPrimitive;
use serde::Serialize;

use crate::analysis::varphi_int;
use crate::certificates::{
    extract_const_witness, extract_nongen_invariant, generate_shift_witness, verify_const_witness,
    verify_nongen_invariant, ConstWitness, NonGenInvariant,
};
use crate::error::{Error, Result};
use crate::generacy::{decide_const, DecideOptions, Verdict};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SInfResult {
    pub n: usize,
    /// Exact value when the scan finished.
    pub value: Option<u64>,
    /// Certified bracket `lower ≤ s_{−∞}(n) ≤ upper`.
    pub lower: u64,
    pub upper: u64,
    /// Invariant for the constant `lower`.
    pub lower_cert: Option<NonGenInvariant>,
    /// Witness for the constant `upper + 1`.
    pub upper_cert: Option<ConstWitness>,
    pub scan: Vec<(u64, Verdict)>,
}

/// Scan `c = 1, 2, …` until the constant `c` is 0-generating.
///
/// On a budget stop the result is a bracket whose upper end is `φ(n+1)`,
/// backed by the shift witness.
pub fn s_inf(n: usize, opts: &DecideOptions) -> Result<SInfResult> {
    if n == 0 {
        return Err(Error::BadDimension { got: 0, max: usize::MAX });
    }
    let opts = DecideOptions { provenance: true, ..opts.clone() };
    let top = varphi_int(n + 1)
        .value
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("φ({}) does not fit in 64 bits", n + 1)))?;
    let mut scan = Vec::new();
    let mut lower_cert = None;
    let mut lower = 0;
    for c in 1..=top + 1 {
        let run = decide_const(c, n, &opts)?;
        scan.push((c, run.verdict));
        match run.verdict {
            Verdict::NotGenerating { .. } => {
                let inv = extract_nongen_invariant(&run)?;
                let rep = verify_nongen_invariant(&inv);
                if !rep.passed {
                    return Err(Error::Domain(format!("extracted invariant for c = {c} does not verify:\n{rep}")));
                }
                lower = c;
                lower_cert = Some(inv);
            }
            Verdict::Generating { .. } => {
                let w = extract_const_witness(&run)?;
                let rep = verify_const_witness(&w);
                if !rep.passed {
                    return Err(Error::Domain(format!("extracted witness for c = {c} does not verify:\n{rep}")));
                }
                return Ok(SInfResult {
                    n,
                    value: Some(c - 1),
                    lower,
                    upper: c - 1,
                    lower_cert,
                    upper_cert: Some(w),
                    scan,
                });
            }
            Verdict::BudgetExceeded { .. } => break,
        }
    }
    let upper_cert = generate_shift_witness(n).ok().filter(|w| verify_const_witness(w).passed);
    let upper = match &upper_cert {
        Some(w) => w.hbar - 1,
        None => top,
    };
    Ok(SInfResult { n, value: None, lower, upper, lower_cert, upper_cert, scan })
}
