use rayon::prelude::*;

use crate::certificates::{extract_general_witness, verify_general_witness, CheckItem, GeneralWitness, VerifyReport};
use crate::error::{Error, Result};
use crate::generacy::{decide_general, DecideOptions, Verdict};
use crate::nvec::{harmonic_mean, NatVec, Rational};

use super::frontier::{dominates_sorted, minimal_frontier};

/// Decision oracle used by the net and bound operations.
pub type Decider<'a> = &'a (dyn Fn(&NatVec) -> Result<Verdict> + Sync);

/// Check that every frontier vector for `(n, t)` dominates a net element and
/// that every net element is 0-generating. A pass proves `s_{−1}(n) ≤ t`.
pub fn verify_net(n: usize, t: &Rational, net: &[NatVec], decide: Decider<'_>) -> Result<VerifyReport> {
    let frontier = minimal_frontier(n, t)?;
    let mut items = Vec::new();
    for (i, x) in frontier.minimal.iter().enumerate() {
        let cover = net.iter().find(|y| y.dim() == n && dominates_sorted(x, y));
        let problems = match cover {
            Some(_) => vec![],
            None => vec![format!("frontier vector {x} dominates no net element")],
        };
        items.push(CheckItem { index: i, label: format!("frontier {x}"), ok: problems.is_empty(), problems });
    }
    let verdicts: Vec<Result<Verdict>> = net.par_iter().map(|y| decide(y)).collect();
    for (j, (y, v)) in net.iter().zip(verdicts).enumerate() {
        let mut problems = Vec::new();
        if y.dim() != n {
            problems.push(format!("dimension {} in a net for n = {n}", y.dim()));
        }
        match v? {
            Verdict::Generating { .. } => {}
            other => problems.push(format!("{y} is {other}")),
        }
        items.push(CheckItem {
            index: frontier.minimal.len() + j,
            label: format!("net {y}"),
            ok: problems.is_empty(),
            problems,
        });
    }
    let passed = items.iter().all(|i| i.ok);
    Ok(VerifyReport {
        kind: "net".into(),
        passed,
        statement: format!("every vector on {n} coordinates with harmonic mean above {t} is 0-generating, so s_-1({n}) <= {t}"),
        items,
    })
}

/// Engine verdict backed by an extracted, verified witness.
pub fn certified_generating(y: &NatVec, opts: &DecideOptions) -> Result<(Verdict, Option<GeneralWitness>)> {
    let opts = DecideOptions { provenance: true, ..opts.clone() };
    let run = decide_general(y, &opts)?;
    if !run.verdict.is_generating() {
        return Ok((run.verdict, None));
    }
    let w = extract_general_witness(&run)?;
    let rep = verify_general_witness(&w);
    if !rep.passed {
        return Err(Error::Domain(format!("witness for {y} does not verify:\n{rep}")));
    }
    Ok((run.verdict, Some(w)))
}

/// [`verify_net`] with every net verdict backed by a verified witness; returns the witnesses too.
pub fn verify_net_certified(
    n: usize,
    t: &Rational,
    net: &[NatVec],
    opts: &DecideOptions,
) -> Result<(VerifyReport, Vec<GeneralWitness>)> {
    let results: Vec<Result<(Verdict, Option<GeneralWitness>)>> =
        net.par_iter().map(|y| certified_generating(y, opts)).collect();
    let mut witnesses = Vec::new();
    let mut verdicts = std::collections::HashMap::new();
    for (y, r) in net.iter().zip(results) {
        let (v, w) = r?;
        verdicts.insert(y.clone(), v);
        witnesses.extend(w);
    }
    let lookup = move |y: &NatVec| -> Result<Verdict> {
        verdicts.get(y).copied().ok_or_else(|| Error::Domain(format!("{y} was not decided")))
    };
    Ok((verify_net(n, t, net, &lookup)?, witnesses))
}

/// `M_{−1}(x)` when `x` is not 0-generating; a lower bound on `s_{−1}(n)`.
pub fn s1_lower_bound(x: &NatVec, decide: Decider<'_>) -> Result<Rational> {
    if x.entries().contains(&0) {
        return Err(Error::Domain(format!("{x} has a zero entry")));
    }
    match decide(x)? {
        Verdict::NotGenerating { .. } => harmonic_mean(x),
        Verdict::Generating { .. } => Err(Error::Domain(format!("{x} is 0-generating: no bound"))),
        v @ Verdict::BudgetExceeded { .. } => Err(Error::Budget(format!("{x}: {v}"))),
    }
}

/// Shrink each frontier vector coordinatewise while it stays 0-generating.
/// A heuristic: the result covers the frontier but need not be minimal.
pub fn suggest_net(n: usize, t: &Rational, decide: Decider<'_>) -> Result<Vec<NatVec>> {
    let frontier = minimal_frontier(n, t)?;
    let mut out: Vec<NatVec> = Vec::new();
    for x in &frontier.minimal {
        if !decide(x)?.is_generating() {
            return Err(Error::Domain(format!("frontier vector {x} is not 0-generating; no net exists at {t}")));
        }
        let mut cur = x.entries().to_vec();
        for i in (0..n).rev() {
            while cur[i] > 1 {
                let mut trial = cur.clone();
                trial[i] -= 1;
                let tv = NatVec::new(trial.clone())?.canonical();
                if decide(&tv)?.is_generating() {
                    cur = tv.into_entries();
                } else {
                    break;
                }
            }
        }
        out.push(NatVec::new(cur)?.canonical());
    }
    out.sort_by_key(|v| v.entries().iter().sum::<u64>());
    let mut net: Vec<NatVec> = Vec::new();
    for v in out {
        if !net.iter().any(|m| dominates_sorted(&v, m)) {
            net.push(v);
        }
    }
    net.sort();
    Ok(net)
}
