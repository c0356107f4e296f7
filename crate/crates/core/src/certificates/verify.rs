use std::collections::HashSet;

use crate::generacy::reduce::Collector;
use crate::nvec::lattice::{pt_add, pt_from, pt_le, pt_to, BoxSpace, Bits, Pt, MAX_DIM};
use crate::nvec::{all_permutations, check_permutation, NatVec};

use super::{
    Certificate, CheckItem, ConstWitness, GeneralNonGenInvariant, GeneralWitness, NonGenInvariant, VerifyReport,
};

const GLOBAL: usize = usize::MAX;

pub fn verify(cert: &Certificate) -> VerifyReport {
    match cert {
        Certificate::ConstWitness(c) => verify_const_witness(c),
        Certificate::GeneralWitness(c) => verify_general_witness(c),
        Certificate::NongenInvariant(c) => verify_nongen_invariant(c),
        Certificate::GeneralNongenInvariant(c) => verify_general_nongen_invariant(c),
    }
}

fn item(index: usize, label: String, problems: Vec<String>) -> CheckItem {
    CheckItem { index, label, ok: problems.is_empty(), problems }
}

fn finish(kind: &str, statement: String, items: Vec<CheckItem>) -> VerifyReport {
    let passed = !items.is_empty() && items.iter().all(|i| i.ok);
    VerifyReport { kind: kind.into(), passed, statement, items }
}

fn header_problems(n: usize, dims: impl Iterator<Item = usize>) -> Vec<String> {
    let mut p = Vec::new();
    if n == 0 {
        p.push("dimension n must be positive".into());
    }
    if let Some(d) = dims.into_iter().find(|&d| d != n) {
        p.push(format!("vector of dimension {d} in a certificate with n = {n}"));
    }
    p
}

/// Check an annulating sequence for the constant bound `hbar`.
pub fn verify_const_witness(cert: &ConstWitness) -> VerifyReport {
    let n = cert.n;
    let statement = format!(
        "the constant {} on {} coordinates is 0-generating, so s_-inf({}) < {}",
        cert.hbar, n, n, cert.hbar
    );
    let mut items = Vec::new();
    let dims = cert
        .steps
        .iter()
        .flat_map(|s| std::iter::once(s.f.dim()).chain(std::iter::once(s.fhat.dim())).chain(s.parts.iter().map(NatVec::dim)));
    let head = header_problems(n, dims);
    if !head.is_empty() {
        items.push(item(GLOBAL, "header".into(), head));
        return finish("const_witness", statement, items);
    }
    let mut orbits: Vec<NatVec> = Vec::new();
    for (t, step) in cert.steps.iter().enumerate() {
        let mut p = Vec::new();
        if step.k >= n {
            p.push(format!("k = {} is not below n = {n}", step.k));
        }
        if step.parts.len() != step.k {
            p.push(format!("{} parts listed for k = {}", step.parts.len(), step.k));
        }
        if let Some(refs) = &step.refs {
            if refs.len() != step.parts.len() {
                p.push(format!("{} refs for {} parts", refs.len(), step.parts.len()));
            }
        }
        for (j, part) in step.parts.iter().enumerate() {
            let canon = part.canonical();
            match step.refs.as_ref().and_then(|r| r.get(j)) {
                Some(&r) if r >= t => p.push(format!("part {j} refers to step {r}, which is not earlier")),
                Some(&r) if orbits[r] != canon => {
                    p.push(format!("part {part} is not a permutation of f of step {r} {}", cert.steps[r].f))
                }
                Some(_) => {}
                None => {
                    if !orbits.contains(&canon) {
                        p.push(format!("part {part} is not a permutation of any earlier f"));
                    }
                }
            }
        }
        let mut sum = NatVec::indicator_tail(n, step.k.min(n));
        for part in &step.parts {
            sum = sum.checked_add(part).unwrap_or_else(|_| sum.clone());
        }
        if sum != step.fhat {
            p.push(format!("1̄_(n∖{}) + parts = {sum}, but fhat = {}", step.k, step.fhat));
        }
        if let Some(i) = step.fhat.entries().iter().position(|&x| x >= cert.hbar) {
            p.push(format!("fhat({i}) = {} is not below hbar = {}", step.fhat.get(i), cert.hbar));
        }
        let zeroed = step.fhat.zero_at(n - 1);
        match &step.sigma {
            Some(sigma) => match check_permutation(sigma, n) {
                Err(e) => p.push(e.to_string()),
                Ok(()) => {
                    let g = zeroed.compose(sigma).unwrap();
                    if g != step.f {
                        p.push(format!("(fhat with last entry zeroed)∘sigma = {g}, but f = {}", step.f));
                    }
                }
            },
            None => {
                if zeroed.canonical() != step.f.canonical() {
                    p.push(format!("f = {} is not a permutation of {zeroed}", step.f));
                }
            }
        }
        orbits.push(step.f.canonical());
        items.push(item(t, format!("step {}", t + 1), p));
    }
    let last_zero = cert.steps.last().map_or(false, |s| s.f.is_zero());
    let mut p = Vec::new();
    if !last_zero {
        p.push("the last step does not produce the zero vector".into());
    }
    items.push(item(GLOBAL, "final".into(), p));
    finish("const_witness", statement, items)
}

/// Check a row-by-row witness for a general bound.
pub fn verify_general_witness(cert: &GeneralWitness) -> VerifyReport {
    let n = cert.n;
    let h = &cert.hbar;
    let statement = format!("{h} is 0-generating");
    let mut items = Vec::new();
    let dims = std::iter::once(h.dim()).chain(cert.rows.iter().flat_map(|r| {
        r.selected
            .iter()
            .map(NatVec::dim)
            .chain(std::iter::once(r.sum.dim()))
            .chain(r.productions.iter().map(|p| p.produced.dim()))
    }));
    let head = header_problems(n, dims);
    if !head.is_empty() {
        items.push(item(GLOBAL, "header".into(), head));
        return finish("general_witness", statement, items);
    }
    let mut available: Vec<HashSet<NatVec>> = (0..n).map(|j| HashSet::from([NatVec::unit(n, j).unwrap()])).collect();
    let mut zero_row = None;
    for (r, row) in cert.rows.iter().enumerate() {
        let mut p = Vec::new();
        if row.selected.len() != n {
            p.push(format!("{} selected vectors, expected {n}", row.selected.len()));
        }
        for (j, y) in row.selected.iter().enumerate().take(n) {
            if !available[j].contains(y) {
                p.push(format!("selected[{j}] = {y} is neither 1_{j} nor an earlier production for index {j}"));
            }
        }
        let mut sum = NatVec::zeros(n);
        for y in &row.selected {
            sum = sum.checked_add(y).unwrap_or_else(|_| sum.clone());
        }
        if sum != row.sum {
            p.push(format!("selected vectors sum to {sum}, but the row lists {}", row.sum));
        }
        if !row.sum.strictly_below(h).unwrap() {
            p.push(format!("sum {} is not strictly below {h}", row.sum));
        }
        if row.productions.is_empty() {
            p.push("row has no productions".into());
        }
        for prod in &row.productions {
            if prod.index >= n {
                p.push(format!("production index {} out of range", prod.index));
                continue;
            }
            let expect = row.sum.zero_at(prod.index);
            if prod.produced != expect {
                p.push(format!("production for index {} is {}, expected {expect}", prod.index, prod.produced));
            }
        }
        for prod in &row.productions {
            if prod.index < n {
                available[prod.index].insert(prod.produced.clone());
            }
        }
        if p.is_empty() && zero_row.is_none() && row.productions.iter().any(|q| q.produced.is_zero()) {
            zero_row = Some(r);
        }
        let label = match &row.label {
            Some(l) => format!("row {r} (m={l})"),
            None => format!("row {r}"),
        };
        items.push(item(r, label, p));
    }
    let mut p = Vec::new();
    if zero_row.is_none() {
        p.push("no valid row produces the zero vector".into());
    }
    items.push(item(GLOBAL, "final".into(), p));
    finish("general_witness", statement, items)
}

/// Minimal elements of `level + rhs` strictly below the box caps, deduplicated.
fn next_level(space: &BoxSpace, level: &[Pt], rhs: &[Pt], scratch: &mut Bits) -> Vec<Pt> {
    let mut col: Collector<()> = Collector::new();
    for a in level {
        for b in rhs {
            let s = pt_add(a, b);
            if space.contains(&s) {
                col.push(space, scratch, s, ());
            }
        }
    }
    col.finish_minimal(space, scratch).into_iter().map(|x| x.0).collect()
}

fn covered(m: &[Pt], x: &Pt, n: usize) -> bool {
    m.iter().any(|q| pt_le(q, x, n))
}

fn to_pts(vs: &[NatVec]) -> Option<Vec<Pt>> {
    vs.iter().map(pt_from).collect()
}

/// Check that `M∘Σ_n` absorbs one step of the constant recursion and misses zero.
pub fn verify_nongen_invariant(cert: &NonGenInvariant) -> VerifyReport {
    let n = cert.n;
    let c = cert.hbar;
    let statement = format!(
        "the constant {c} on {n} coordinates is not 0-generating, so s_-inf({n}) >= {c}"
    );
    let mut items = Vec::new();
    let mut head = header_problems(n, cert.m.iter().map(NatVec::dim));
    if n > MAX_DIM {
        head.push(format!("n = {n} exceeds the supported dimension {MAX_DIM}"));
    }
    let space = BoxSpace::new(&vec![c; n.max(1)]);
    if space.is_none() {
        head.push("bounding box too large".into());
    }
    let pts = to_pts(&cert.m);
    if pts.is_none() {
        head.push("entries too large".into());
    }
    if !head.is_empty() {
        items.push(item(GLOBAL, "header".into(), head));
        return finish("nongen_invariant", statement, items);
    }
    let space = space.unwrap();
    let perms = all_permutations(n);
    let mut orbit: Vec<Pt> = Vec::new();
    for p in pts.unwrap() {
        for s in &perms {
            let mut q = [0u32; MAX_DIM];
            for (i, &si) in s.iter().enumerate() {
                q[i] = p[si];
            }
            orbit.push(q);
        }
    }
    // The first stage of the recursion is the orbit of S(1̄_n) whenever 1̄_n < c.
    if c >= 2 {
        for i in 0..n {
            let mut q = [0u32; MAX_DIM];
            q[..n].fill(1);
            q[i] = 0;
            orbit.push(q);
        }
    }
    orbit.sort_unstable();
    orbit.dedup();
    let zero_in = cert.m.iter().any(NatVec::is_zero) || (n == 1 && c >= 2);
    items.push(item(
        GLOBAL,
        "zero excluded".into(),
        if zero_in { vec!["M contains the zero vector".into()] } else { vec![] },
    ));
    let in_box: Vec<Pt> = orbit.iter().copied().filter(|p| space.contains(p)).collect();
    let mut scratch = Bits::new(space.size);
    let mut level: Vec<Pt> = if space.size > 0 { vec![[0u32; MAX_DIM]] } else { vec![] };
    for k in 0..n {
        if k > 0 {
            level = next_level(&space, &level, &in_box, &mut scratch);
        }
        let mut p = Vec::new();
        for t in &level {
            let mut x = *t;
            for xi in x.iter_mut().take(n).skip(k) {
                *xi += 1;
            }
            if !space.contains(&x) {
                continue;
            }
            let mut z = x;
            z[n - 1] = 0;
            if !covered(&orbit, &z, n) {
                p.push(format!("x = {} yields {} outside the upward closure", pt_to(&x, n), pt_to(&z, n)));
                if p.len() >= 5 {
                    break;
                }
            }
        }
        items.push(item(k, format!("k = {k}"), p));
    }
    finish("nongen_invariant", statement, items)
}

/// Check per-index antichains `I_i`: `1_i ∈ ↑I_i`, `0 ∉ ↑I_i`, and one general step stays inside.
pub fn verify_general_nongen_invariant(cert: &GeneralNonGenInvariant) -> VerifyReport {
    let n = cert.n;
    let h = &cert.hbar;
    let statement = format!("{h} is not 0-generating");
    let mut items = Vec::new();
    let mut head = header_problems(n, std::iter::once(h.dim()).chain(cert.m.iter().flatten().map(NatVec::dim)));
    if cert.m.len() != n {
        head.push(format!("{} index sets for n = {n}", cert.m.len()));
    }
    if n > MAX_DIM {
        head.push(format!("n = {n} exceeds the supported dimension {MAX_DIM}"));
    }
    let space = BoxSpace::new(h.entries());
    if space.is_none() {
        head.push("bounding box too large".into());
    }
    let sets: Option<Vec<Vec<Pt>>> = cert.m.iter().map(|s| to_pts(s)).collect();
    if sets.is_none() {
        head.push("entries too large".into());
    }
    if !head.is_empty() {
        items.push(item(GLOBAL, "header".into(), head));
        return finish("general_nongen_invariant", statement, items);
    }
    let space = space.unwrap();
    let sets = sets.unwrap();
    for i in 0..n {
        let mut p = Vec::new();
        let mut u = [0u32; MAX_DIM];
        u[i] = 1;
        if !covered(&sets[i], &u, n) {
            p.push(format!("1_{i} is not covered by I_{i}"));
        }
        if sets[i].iter().any(|q| q[..n].iter().all(|&x| x == 0)) {
            p.push(format!("I_{i} contains the zero vector"));
        }
        items.push(item(GLOBAL, format!("seed {i}"), p));
    }
    let mut scratch = Bits::new(space.size);
    let in_box: Vec<Vec<Pt>> = sets.iter().map(|s| s.iter().copied().filter(|p| space.contains(p)).collect()).collect();
    let mut level: Vec<Pt> = in_box[0].clone();
    for rhs in in_box.iter().skip(1) {
        level = next_level(&space, &level, rhs, &mut scratch);
    }
    for i in 0..n {
        let mut p = Vec::new();
        for s in &level {
            let mut z = *s;
            z[i] = 0;
            if !covered(&sets[i], &z, n) {
                p.push(format!("sum {} yields {} outside ↑I_{i}", pt_to(s, n), pt_to(&z, n)));
                if p.len() >= 5 {
                    break;
                }
            }
        }
        items.push(item(i, format!("index {i}"), p));
    }
    finish("general_nongen_invariant", statement, items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{ConstStep, Meta, Production, WitnessRow};

    fn v(x: &[u64]) -> NatVec {
        NatVec::from(x)
    }

    fn table4() -> ConstWitness {
        ConstWitness {
            n: 2,
            hbar: 3,
            steps: vec![
                ConstStep { f: v(&[0, 1]), fhat: v(&[1, 1]), k: 0, parts: vec![], refs: None, sigma: None },
                ConstStep {
                    f: v(&[0, 0]),
                    fhat: v(&[0, 2]),
                    k: 1,
                    parts: vec![v(&[0, 1])],
                    refs: None,
                    sigma: None,
                },
            ],
            meta: Meta::default(),
        }
    }

    #[test]
    fn const_witness_passes_and_mutations_fail() {
        let c = table4();
        let r = verify_const_witness(&c);
        assert!(r.passed, "{r}");
        let mut bad = c.clone();
        bad.steps[1].k = 0;
        let r = verify_const_witness(&bad);
        assert!(!r.passed);
        assert_eq!(r.failing_indices(), vec![1]);
        let mut bad = c.clone();
        bad.hbar = 2;
        assert_eq!(verify_const_witness(&bad).failing_indices(), vec![1]);
        let mut bad = c;
        bad.steps[1].refs = Some(vec![1]);
        assert!(!verify_const_witness(&bad).passed);
    }

    #[test]
    fn sigma_checked_when_given() {
        let mut c = table4();
        c.steps[0].sigma = Some(vec![1, 0]);
        assert!(verify_const_witness(&c).passed);
        c.steps[0].sigma = Some(vec![0, 1]);
        assert!(!verify_const_witness(&c).passed);
        c.steps[0].sigma = Some(vec![0, 0]);
        assert!(!verify_const_witness(&c).passed);
    }

    fn table8() -> GeneralWitness {
        GeneralWitness {
            n: 2,
            hbar: v(&[2, 3]),
            rows: vec![
                WitnessRow {
                    label: None,
                    selected: vec![v(&[1, 0]), v(&[0, 1])],
                    sum: v(&[1, 1]),
                    productions: vec![Production { index: 0, produced: v(&[0, 1]) }],
                },
                WitnessRow {
                    label: None,
                    selected: vec![v(&[0, 1]), v(&[0, 1])],
                    sum: v(&[0, 2]),
                    productions: vec![Production { index: 1, produced: v(&[0, 0]) }],
                },
            ],
            meta: Meta::default(),
        }
    }

    #[test]
    fn general_witness_checks() {
        assert!(verify_general_witness(&table8()).passed);
        let mut bad = table8();
        bad.rows[1].selected[0] = v(&[0, 2]);
        let r = verify_general_witness(&bad);
        assert_eq!(r.failing_indices(), vec![1]);
        let mut bad = table8();
        bad.hbar = v(&[2, 2]);
        assert!(!verify_general_witness(&bad).passed);
    }

    #[test]
    fn printed_invariants() {
        let m4 = NonGenInvariant { n: 4, hbar: 5, m: vec![v(&[0, 0, 1, 2]), v(&[0, 0, 0, 4])], meta: Meta::default() };
        assert!(verify_nongen_invariant(&m4).passed);
        let mut m4_6 = m4.clone();
        m4_6.hbar = 6;
        assert!(!verify_nongen_invariant(&m4_6).passed);
        let m5 = NonGenInvariant {
            n: 5,
            hbar: 9,
            m: vec![v(&[0, 0, 1, 1, 2]), v(&[0, 0, 0, 1, 6]), v(&[0, 0, 0, 2, 4]), v(&[0, 0, 0, 3, 3])],
            meta: Meta::default(),
        };
        assert!(verify_nongen_invariant(&m5).passed);
    }

    #[test]
    fn zero_in_m_rejected() {
        let c = NonGenInvariant { n: 2, hbar: 2, m: vec![v(&[0, 0])], meta: Meta::default() };
        assert!(!verify_nongen_invariant(&c).passed);
    }
}
