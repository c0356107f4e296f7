use serde::Deserialize;

use crate::error::{Error, Result};
use crate::nvec::NatVec;

const EMBEDDED: &str = include_str!("../../data/reference_values.toml");

#[derive(Clone, Debug, Deserialize)]
pub struct Table1Ref {
    pub n: Vec<usize>,
    pub varphi: Vec<u64>,
    pub one_plus_floor_phi: Vec<u64>,
    pub s_inf: Vec<String>,
    pub s1: Vec<String>,
    pub varphi_next: Vec<u64>,
    pub factorial: Vec<u64>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Table2Ref {
    pub n: Vec<usize>,
    pub s1_input: Vec<String>,
    pub defect: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct WeightTableRef {
    pub n: Vec<usize>,
    pub lambda: Vec<f64>,
    pub phi_at_lambda: Vec<f64>,
    pub c_lambda: Vec<f64>,
    pub ones_weight: Vec<f64>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct NetsRef {
    pub a3: Vec<Vec<u64>>,
    pub a4: Vec<Vec<u64>>,
    pub a4_stated_size: usize,
    pub a4_completion: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct KnownDiscrepancy {
    pub id: String,
    pub kind: String,
    #[serde(default)]
    pub fixture: Option<String>,
    #[serde(default)]
    pub item: Option<usize>,
    #[serde(default)]
    pub regenerate: Option<Vec<u64>>,
    #[serde(default)]
    pub table: Option<String>,
    #[serde(default)]
    pub column: Option<String>,
    #[serde(default)]
    pub n: Option<Vec<usize>>,
    pub note: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ReferenceValues {
    pub table1: Table1Ref,
    pub table2: Table2Ref,
    pub weight_table: WeightTableRef,
    pub nets: NetsRef,
    pub known_discrepancies: Vec<KnownDiscrepancy>,
}

impl ReferenceValues {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Schema(format!("reference values: {e}")))
    }

    /// The copy compiled into the library.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded reference values parse")
    }

    /// The known discrepancy covering `table`/`column` at `n`, if any.
    pub fn known(&self, table: &str, column: &str, n: usize) -> Option<&KnownDiscrepancy> {
        self.known_discrepancies.iter().find(|d| {
            d.table.as_deref() == Some(table)
                && matches!(d.column.as_deref(), Some(c) if c == column || c == "all")
                && d.n.as_ref().map_or(false, |ns| ns.contains(&n))
        })
    }

    pub fn certificate_discrepancies(&self) -> impl Iterator<Item = &KnownDiscrepancy> {
        self.known_discrepancies.iter().filter(|d| d.kind == "certificate")
    }

    pub fn a3(&self) -> Vec<NatVec> {
        self.nets.a3.iter().map(|v| NatVec::from(v.as_slice())).collect()
    }

    pub fn a4(&self) -> Vec<NatVec> {
        self.nets.a4.iter().map(|v| NatVec::from(v.as_slice())).collect()
    }

    /// `a4` together with the vectors needed to cover the whole frontier.
    pub fn a4_completed(&self) -> Vec<NatVec> {
        let mut v = self.a4();
        v.extend(self.nets.a4_completion.iter().map(|x| NatVec::from(x.as_slice())));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_parses() {
        let r = ReferenceValues::embedded();
        assert_eq!(r.a4().len(), 12);
        assert_eq!(r.nets.a4_stated_size, 11);
        assert_eq!(r.table1.varphi.len(), 9);
        assert!(r.known("table1", "factorial", 8).is_some());
        assert!(r.known("table1", "factorial", 6).is_none());
        assert_eq!(r.certificate_discrepancies().count(), 9);
    }
}
