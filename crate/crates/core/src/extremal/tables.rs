use num_bigint::BigUint;
use serde::Serialize;

use crate::analysis::{phi_real, varphi_int, weight_table_row, WeightTableRow, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::generacy::{decide, DecideOptions};
use crate::nvec::{NatVec, Rational};

use super::net::{s1_lower_bound, verify_net_certified};
use super::reference::ReferenceValues;
use super::sinf::s_inf;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefectBound {
    pub n: usize,
    pub s1_lower: Rational,
    pub bound: Rational,
}

/// `1 − n/s` for a lower bound `s ≥ n` on `s_{−1}(n)`.
pub fn defect_bound(n: usize, s1_lower: &Rational) -> Result<DefectBound> {
    let nr = Rational::from(n as u64);
    if *s1_lower < nr || n == 0 {
        return Err(Error::Domain(format!("need s ≥ n = {n}, got {s1_lower}")));
    }
    Ok(DefectBound { n, s1_lower: s1_lower.clone(), bound: Rational::one() - nr / s1_lower.clone() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SInfCell {
    pub lower: u64,
    pub upper: u64,
    /// True when the value was computed with both certificates.
    pub computed: bool,
}

impl std::fmt::Display for SInfCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.lower == self.upper {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "[{}, {}]", self.lower, self.upper)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct S1Cell {
    pub lower: Rational,
    pub upper: Option<Rational>,
}

impl std::fmt::Display for S1Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.upper {
            Some(u) if *u == self.lower => write!(f, "{}", self.lower.to_mixed()),
            Some(u) => write!(f, "[{}, {}]", self.lower.to_mixed(), u.to_mixed()),
            None => write!(f, ">={}", self.lower.to_mixed()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub n: usize,
    #[serde(serialize_with = "ser_big")]
    pub varphi: BigUint,
    pub one_plus_floor_phi: u64,
    pub s_inf: SInfCell,
    pub s1: S1Cell,
    #[serde(serialize_with = "ser_big")]
    pub varphi_next: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub factorial: BigUint,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug)]
pub struct TableOptions {
    /// Compute `s_{−∞}(n)` with the engine up to this `n`; bracket beyond.
    pub sinf_upto: usize,
    /// Verify the bundled nets (`n ≤ 4`) to pin `s_{−1}(n)`.
    pub nets: bool,
    pub decide: DecideOptions,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { sinf_upto: 4, nets: true, decide: DecideOptions::default() }
    }
}

/// Non-constant vectors whose harmonic means improve the `s_{−1}` lower bound.
fn probes_for(n: usize) -> Vec<NatVec> {
    match n {
        5 => vec![NatVec::from([9, 9, 9, 9, 10])],
        _ => vec![],
    }
}

fn net_for(n: usize, r: &ReferenceValues) -> Option<Vec<NatVec>> {
    match n {
        1 => Some(vec![NatVec::from([2])]),
        2 => Some(vec![NatVec::from([2, 3])]),
        3 => Some(r.a3()),
        4 => Some(r.a4_completed()),
        _ => None,
    }
}

pub fn table1(n_max: usize, opts: &TableOptions) -> Result<Vec<Table1Row>> {
    let reference = ReferenceValues::embedded();
    let mut rows = Vec::new();
    let mut fact = BigUint::from(1u32);
    for n in 1..=n_max {
        fact *= BigUint::from(n);
        let varphi = varphi_int(n).value;
        let varphi_next = varphi_int(n + 1).value;
        let opf = phi_real(n, DEFAULT_TOL)?.one_plus_floor();
        let s = if n <= opts.sinf_upto {
            let r = s_inf(n, &opts.decide)?;
            SInfCell { lower: r.lower, upper: r.upper, computed: r.value.is_some() }
        } else {
            let hi = u64::try_from(&varphi_next).unwrap_or(u64::MAX);
            SInfCell { lower: opf, upper: hi, computed: false }
        };
        let mut lower = Rational::from(s.lower);
        if s.computed {
            for probe in probes_for(n) {
                let decide = |v: &NatVec| decide(v, &opts.decide);
                if let Ok(b) = s1_lower_bound(&probe, &decide) {
                    if b > lower {
                        lower = b;
                    }
                }
            }
        }
        let mut upper = None;
        if opts.nets && s.computed {
            if let Some(net) = net_for(n, &reference) {
                let (rep, _) = verify_net_certified(n, &lower, &net, &opts.decide)?;
                if rep.passed {
                    upper = Some(lower.clone());
                }
            }
        }
        rows.push(Table1Row {
            n,
            varphi,
            one_plus_floor_phi: opf,
            s_inf: s,
            s1: S1Cell { lower, upper },
            varphi_next,
            factorial: fact.clone(),
        });
    }
    Ok(rows)
}

/// Defect bounds for the given `(n, s_{−1} lower bound)` inputs.
pub fn table2(inputs: &[(usize, Rational)]) -> Result<Vec<DefectBound>> {
    inputs.iter().map(|(n, s)| defect_bound(*n, s)).collect()
}

/// The reference `s_{−1}` inputs for [`table2`].
pub fn table2_reference_inputs() -> Result<Vec<(usize, Rational)>> {
    let r = ReferenceValues::embedded();
    r.table2.n.iter().zip(&r.table2.s1_input).map(|(&n, s)| Ok((n, s.parse()?))).collect()
}

pub fn weight_table(ns: &[usize]) -> Result<Vec<WeightTableRow>> {
    ns.iter().map(|&n| weight_table_row(n)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub table: String,
    pub column: String,
    pub n: usize,
    pub reference: String,
    pub computed: String,
    /// Id of the matching known-discrepancy entry.
    pub known: Option<String>,
}

fn push(
    out: &mut Vec<Discrepancy>,
    r: &ReferenceValues,
    table: &str,
    column: &str,
    n: usize,
    reference: String,
    computed: String,
) {
    if reference != computed {
        let known = r.known(table, column, n).map(|d| d.id.clone());
        out.push(Discrepancy { table: table.into(), column: column.into(), n, reference, computed, known });
    }
}

pub fn diff_table1(rows: &[Table1Row], r: &ReferenceValues) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let t = &r.table1;
    for row in rows {
        let Some(i) = t.n.iter().position(|&m| m == row.n) else { continue };
        push(&mut out, r, "table1", "varphi", row.n, t.varphi[i].to_string(), row.varphi.to_string());
        push(&mut out, r, "table1", "one_plus_floor_phi", row.n, t.one_plus_floor_phi[i].to_string(), row.one_plus_floor_phi.to_string());
        push(&mut out, r, "table1", "varphi_next", row.n, t.varphi_next[i].to_string(), row.varphi_next.to_string());
        push(&mut out, r, "table1", "factorial", row.n, t.factorial[i].to_string(), row.factorial.to_string());
        if row.s_inf.computed {
            push(&mut out, r, "table1", "s_inf", row.n, t.s_inf[i].clone(), row.s_inf.to_string());
            push(&mut out, r, "table1", "s1", row.n, t.s1[i].clone(), row.s1.to_string());
        }
    }
    out
}

pub fn diff_table2(rows: &[DefectBound], r: &ReferenceValues) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for row in rows {
        let Some(i) = r.table2.n.iter().position(|&m| m == row.n) else { continue };
        push(&mut out, r, "table2", "defect", row.n, r.table2.defect[i].clone(), row.bound.to_string());
    }
    out
}

/// Compare at two decimals: `φ_n(λ)` and `λ` at the argmax, `c_λ` at the rounded `λ`.
pub fn diff_weight_table(rows: &[WeightTableRow], r: &ReferenceValues) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let w = &r.weight_table;
    for row in rows {
        let Some(i) = w.n.iter().position(|&m| m == row.n) else { continue };
        let cols = [
            ("lambda", w.lambda[i], row.lambda),
            ("phi_at_lambda", w.phi_at_lambda[i], row.phi_at_lambda),
            ("c_lambda", w.c_lambda[i], row.c_lambda_rounded),
            ("ones_weight", w.ones_weight[i], row.ones_weight),
        ];
        for (col, reference, computed) in cols {
            if (reference - computed).abs() > 0.01 + 1e-9 {
                let known = r.known("weight_table", col, row.n).map(|d| d.id.clone());
                out.push(Discrepancy {
                    table: "weight_table".into(),
                    column: col.into(),
                    n: row.n,
                    reference: format!("{reference:.2}"),
                    computed: format!("{computed:.2}"),
                    known,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect_examples() {
        let b = defect_bound(5, &Rational::new(450, 49).unwrap()).unwrap();
        assert_eq!(b.bound, Rational::new(41, 90).unwrap());
        assert_eq!(defect_bound(6, &Rational::from(19)).unwrap().bound, Rational::new(13, 19).unwrap());
        assert_eq!(defect_bound(8, &Rational::from(122)).unwrap().bound, Rational::new(57, 61).unwrap());
        assert!(defect_bound(5, &Rational::from(4)).is_err());
    }

    #[test]
    fn table2_reference() {
        let rows = table2(&table2_reference_inputs().unwrap()).unwrap();
        let got: Vec<String> = rows.iter().map(|r| r.bound.to_string()).collect();
        assert_eq!(got, ["0", "0", "0", "1/5", "41/90", "13/19", "5/6", "57/61"]);
        assert!(diff_table2(&rows, &ReferenceValues::embedded()).is_empty());
    }

    #[test]
    fn factorial_flags() {
        let opts = TableOptions { sinf_upto: 0, nets: false, ..Default::default() };
        let rows = table1(9, &opts).unwrap();
        let d = diff_table1(&rows, &ReferenceValues::embedded());
        assert_eq!(d.len(), 3, "{d:?}");
        assert!(d.iter().all(|x| x.column == "factorial" && x.known.is_some()));
    }
}
