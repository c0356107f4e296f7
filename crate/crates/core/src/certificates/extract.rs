use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::generacy::{
    decide_const, decide_general, ConstReach, ConstRun, DecideOptions, GeneralDerivation, GeneralRun, Mode, Verdict,
};
use crate::nvec::{antichain_min, NatVec, VecSet};

use super::{
    Certificate, ConstStep, ConstWitness, GeneralNonGenInvariant, GeneralWitness, Meta, NonGenInvariant, Production,
    WitnessRow,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Const,
    General,
}

/// Extract a witness from a finished run of either flavor.
pub fn extract_witness(run: RunRef<'_>) -> Result<Certificate> {
    match run {
        RunRef::Const(r) => extract_const_witness(r).map(Certificate::ConstWitness),
        RunRef::General(r) => extract_general_witness(r).map(Certificate::GeneralWitness),
    }
}

pub enum RunRef<'a> {
    Const(&'a ConstRun),
    General(&'a GeneralRun),
}

impl RunRef<'_> {
    pub fn flavor(&self) -> Flavor {
        match self {
            RunRef::Const(_) => Flavor::Const,
            RunRef::General(_) => Flavor::General,
        }
    }
}

fn engine_meta(mode: Mode, stage: u64) -> Meta {
    let mut m = Meta::engine();
    m.extra.insert("mode".into(), serde_json::json!(mode.to_string()));
    m.extra.insert("stage".into(), serde_json::json!(stage));
    m
}

/// Walk back from the zero vector to an annulating sequence.
pub fn extract_const_witness(run: &ConstRun) -> Result<ConstWitness> {
    if !run.verdict.is_generating() {
        return Err(Error::NoProvenance(format!("run ended {}", run.verdict)));
    }
    let reach = &run.reach;
    let prov = reach
        .provenance
        .as_ref()
        .ok_or_else(|| Error::NoProvenance("run was made without provenance".into()))?;
    let n = reach.n;
    let mut needed: BTreeSet<NatVec> = BTreeSet::new();
    let mut stack = vec![NatVec::zeros(n)];
    while let Some(key) = stack.pop() {
        if !needed.insert(key.clone()) {
            continue;
        }
        let d = prov.get(&key).ok_or_else(|| Error::NoProvenance(format!("no derivation for {key}")))?;
        for p in &d.parts {
            stack.push(p.canonical());
        }
    }
    let mut order: Vec<(u64, NatVec)> = needed.into_iter().map(|k| (prov[&k].stage, k)).collect();
    order.sort();
    let position: HashMap<NatVec, usize> = order.iter().enumerate().map(|(i, (_, k))| (k.clone(), i)).collect();
    let steps = order
        .iter()
        .map(|(_, key)| {
            let d = &prov[key];
            let refs = d.parts.iter().map(|p| position[&p.canonical()]).collect();
            ConstStep {
                f: d.f(),
                fhat: d.fhat.clone(),
                k: d.k,
                parts: d.parts.clone(),
                refs: Some(refs),
                sigma: Some((0..n).collect()),
            }
        })
        .collect();
    Ok(ConstWitness { n, hbar: reach.c, steps, meta: engine_meta(reach.mode, reach.stage) })
}

/// Walk back from the zero production to a row-by-row witness.
pub fn extract_general_witness(run: &GeneralRun) -> Result<GeneralWitness> {
    let Verdict::Generating { witness_index, .. } = run.verdict else {
        return Err(Error::NoProvenance(format!("run ended {}", run.verdict)));
    };
    let st = &run.state;
    let prov = st
        .provenance
        .as_ref()
        .ok_or_else(|| Error::NoProvenance("run was made without provenance".into()))?;
    let n = st.h.dim();
    let mut needed: BTreeSet<(usize, NatVec)> = BTreeSet::new();
    let mut stack = vec![(witness_index, NatVec::zeros(n))];
    while let Some(key) = stack.pop() {
        if needed.contains(&key) {
            continue;
        }
        let d = prov.get(&key).ok_or_else(|| Error::NoProvenance(format!("no derivation for {:?}", key)))?;
        for (j, y) in d.selected.iter().enumerate() {
            if *y != NatVec::unit(n, j).unwrap() {
                stack.push((j, y.clone()));
            }
        }
        needed.insert(key);
    }
    type RowKey = (u64, NatVec, Vec<NatVec>);
    let mut rows: BTreeMap<RowKey, Vec<Production>> = BTreeMap::new();
    for (i, z) in needed {
        let d: &GeneralDerivation = &prov[&(i, z.clone())];
        rows.entry((d.stage, d.sum.clone(), d.selected.clone()))
            .or_default()
            .push(Production { index: i, produced: z });
    }
    let rows = rows
        .into_iter()
        .map(|((stage, sum, selected), productions)| WitnessRow {
            label: Some(format!("{}", stage - 1)),
            selected,
            sum,
            productions,
        })
        .collect();
    Ok(GeneralWitness { n, hbar: st.h.clone(), rows, meta: engine_meta(st.mode, st.stage) })
}

/// Decide `h` and return the verdict with a checked certificate for it
/// (`None` when the budget ran out).
pub fn decide_certified(h: &NatVec, opts: &DecideOptions) -> Result<(Verdict, Option<Certificate>)> {
    let opts = DecideOptions { provenance: true, ..opts.clone() };
    let (verdict, cert) = if h.is_constant() {
        let run = decide_const(h.get(0), h.dim(), &opts)?;
        let cert = match run.verdict {
            Verdict::Generating { .. } => Some(Certificate::ConstWitness(extract_const_witness(&run)?)),
            Verdict::NotGenerating { .. } => Some(Certificate::NongenInvariant(extract_nongen_invariant(&run)?)),
            Verdict::BudgetExceeded { .. } => None,
        };
        (run.verdict, cert)
    } else {
        let run = decide_general(h, &opts)?;
        let cert = match run.verdict {
            Verdict::Generating { .. } => Some(Certificate::GeneralWitness(extract_general_witness(&run)?)),
            Verdict::NotGenerating { .. } => {
                Some(Certificate::GeneralNongenInvariant(extract_general_nongen_invariant(&run)?))
            }
            Verdict::BudgetExceeded { .. } => None,
        };
        (run.verdict, cert)
    };
    if let Some(c) = &cert {
        let rep = super::verify(c);
        if !rep.passed {
            return Err(Error::Domain(format!("certificate extracted for {h} does not verify:\n{rep}")));
        }
    }
    Ok((verdict, cert))
}

/// `M` = canonical representatives of the minimal elements of the fixpoint set.
pub fn extract_nongen_invariant(run: &ConstRun) -> Result<NonGenInvariant> {
    if !run.verdict.is_not_generating() {
        return Err(Error::Domain(format!("run is not at a non-generating fixpoint: {}", run.verdict)));
    }
    Ok(nongen_from_reach(&run.reach))
}

fn nongen_from_reach(reach: &ConstReach) -> NonGenInvariant {
    let set = VecSet::from_vecs(reach.n, reach.set.iter().cloned()).unwrap();
    let mut reps: Vec<NatVec> = antichain_min(&set).into_iter().map(|v| v.canonical()).collect();
    reps.sort();
    reps.dedup();
    NonGenInvariant { n: reach.n, hbar: reach.c, m: reps, meta: engine_meta(reach.mode, reach.stage) }
}

/// Per-index antichains of a general run at a non-generating fixpoint.
pub fn extract_general_nongen_invariant(run: &GeneralRun) -> Result<GeneralNonGenInvariant> {
    if !run.verdict.is_not_generating() {
        return Err(Error::Domain(format!("run is not at a non-generating fixpoint: {}", run.verdict)));
    }
    let st = &run.state;
    let n = st.h.dim();
    let m = st
        .pools
        .iter()
        .map(|pool| {
            let set = VecSet::from_vecs(n, pool.iter().cloned()).unwrap();
            antichain_min(&set)
        })
        .collect();
    Ok(GeneralNonGenInvariant { n, hbar: st.h.clone(), m, meta: engine_meta(st.mode, st.stage) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::verify;

    #[test]
    fn const_round_trip() {
        for mode in [Mode::Full, Mode::Antichain] {
            let opts = DecideOptions::default().with_mode(mode).with_provenance();
            let run = decide_const(3, 2, &opts).unwrap();
            let w = extract_const_witness(&run).unwrap();
            assert!(w.steps.len() <= 2);
            assert!(verify(&Certificate::ConstWitness(w)).passed);
        }
    }

    #[test]
    fn general_round_trip() {
        for mode in [Mode::Full, Mode::Antichain] {
            let opts = DecideOptions::default().with_mode(mode).with_provenance();
            let run = decide_general(&NatVec::from([2, 3, 7]), &opts).unwrap();
            let w = extract_general_witness(&run).unwrap();
            let r = verify(&Certificate::GeneralWitness(w));
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn wrong_outcome_rejected() {
        let opts = DecideOptions::default().with_provenance();
        let run = decide_const(2, 2, &opts).unwrap();
        assert!(extract_const_witness(&run).is_err());
        let inv = extract_nongen_invariant(&run).unwrap();
        assert!(verify(&Certificate::NongenInvariant(inv.clone())).passed);
        assert!(!inv.m.iter().any(NatVec::is_zero));
        let plain = decide_const(3, 2, &DecideOptions::default()).unwrap();
        assert!(extract_const_witness(&plain).is_err());
    }

    #[test]
    fn m4_style_invariant() {
        let run = decide_const(5, 4, &DecideOptions::default()).unwrap();
        let inv = extract_nongen_invariant(&run).unwrap();
        assert!(verify(&Certificate::NongenInvariant(inv.clone())).passed);
        for target in [NatVec::from([0, 0, 1, 2]), NatVec::from([0, 0, 0, 4])] {
            assert!(inv.m.iter().any(|m| target.canonical().dominates(&m.canonical()).unwrap()));
        }
    }

    #[test]
    fn certified_decisions() {
        let opts = DecideOptions::default();
        for (h, gen) in [("2,3,7", true), ("4,4,4", true), ("3,3,3", false), ("0,5", false), ("2,2,5", false)] {
            let (v, c) = decide_certified(&h.parse().unwrap(), &opts).unwrap();
            assert_eq!(v.is_generating(), gen, "{h}");
            assert_eq!(c.unwrap().proves_generating(), gen);
        }
    }

    #[test]
    fn general_invariant_round_trip() {
        let run = decide_general(&NatVec::from([2, 2, 5]), &DecideOptions::default()).unwrap();
        if run.verdict.is_not_generating() {
            let inv = extract_general_nongen_invariant(&run).unwrap();
            let r = verify(&Certificate::GeneralNongenInvariant(inv));
            assert!(r.passed, "{r}");
        }
    }
}
