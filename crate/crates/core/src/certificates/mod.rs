//! Certificates for both outcomes, their verifiers and the JSON format.

mod extract;
mod io;
mod shift;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::nvec::NatVec;

pub use extract::{
    decide_certified, extract_const_witness, extract_general_nongen_invariant, extract_general_witness, extract_nongen_invariant,
    extract_witness, Flavor, RunRef,
};
pub use io::{cert_from_json, cert_to_json, load_cert, save_cert};
pub use shift::generate_shift_witness;
pub use verify::{
    verify, verify_const_witness, verify_general_nongen_invariant, verify_general_witness, verify_nongen_invariant,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default)]
    pub source: String,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl Meta {
    pub fn engine() -> Self {
        Meta { source: "engine".into(), extra: BTreeMap::new() }
    }

    pub fn source(s: &str) -> Self {
        Meta { source: s.into(), extra: BTreeMap::new() }
    }
}

/// One step of an annulating sequence for a constant bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstStep {
    pub f: NatVec,
    pub fhat: NatVec,
    pub k: usize,
    /// The `k` summands; each must be a permutation of an earlier step's `f`.
    pub parts: Vec<NatVec>,
    /// Optional indices of the steps the parts come from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refs: Option<Vec<usize>>,
    /// `f = (fhat − fhat(n−1)·1_{n−1})∘sigma`; searched for when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstWitness {
    pub n: usize,
    pub hbar: u64,
    pub steps: Vec<ConstStep>,
    #[serde(default)]
    pub meta: Meta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Production {
    pub index: usize,
    pub produced: NatVec,
}

/// One row of a general witness: a choice of one vector per pool and what its sum produces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub selected: Vec<NatVec>,
    pub sum: NatVec,
    pub productions: Vec<Production>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralWitness {
    pub n: usize,
    pub hbar: NatVec,
    pub rows: Vec<WitnessRow>,
    #[serde(default)]
    pub meta: Meta,
}

/// An antichain `M` whose orbit closure absorbs one step of the constant recursion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonGenInvariant {
    pub n: usize,
    pub hbar: u64,
    #[serde(rename = "M")]
    pub m: Vec<NatVec>,
    #[serde(default)]
    pub meta: Meta,
}

/// Per-index antichains `I_i` absorbing one step of the general recursion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralNonGenInvariant {
    pub n: usize,
    pub hbar: NatVec,
    #[serde(rename = "M")]
    pub m: Vec<Vec<NatVec>>,
    #[serde(default)]
    pub meta: Meta,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    ConstWitness(ConstWitness),
    GeneralWitness(GeneralWitness),
    NongenInvariant(NonGenInvariant),
    GeneralNongenInvariant(GeneralNonGenInvariant),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::ConstWitness(_) => "const_witness",
            Certificate::GeneralWitness(_) => "general_witness",
            Certificate::NongenInvariant(_) => "nongen_invariant",
            Certificate::GeneralNongenInvariant(_) => "general_nongen_invariant",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Certificate::ConstWitness(c) => c.n,
            Certificate::GeneralWitness(c) => c.n,
            Certificate::NongenInvariant(c) => c.n,
            Certificate::GeneralNongenInvariant(c) => c.n,
        }
    }

    /// The bound as a vector (constant bounds expanded).
    pub fn hbar(&self) -> NatVec {
        match self {
            Certificate::ConstWitness(c) => NatVec::constant(c.n.max(1), c.hbar),
            Certificate::GeneralWitness(c) => c.hbar.clone(),
            Certificate::NongenInvariant(c) => NatVec::constant(c.n.max(1), c.hbar),
            Certificate::GeneralNongenInvariant(c) => c.hbar.clone(),
        }
    }

    /// True when a passing check proves 0-generacy, false when it proves the opposite.
    pub fn proves_generating(&self) -> bool {
        matches!(self, Certificate::ConstWitness(_) | Certificate::GeneralWitness(_))
    }

    pub fn meta(&self) -> &Meta {
        match self {
            Certificate::ConstWitness(c) => &c.meta,
            Certificate::GeneralWitness(c) => &c.meta,
            Certificate::NongenInvariant(c) => &c.meta,
            Certificate::GeneralNongenInvariant(c) => &c.meta,
        }
    }

    pub fn meta_mut(&mut self) -> &mut Meta {
        match self {
            Certificate::ConstWitness(c) => &mut c.meta,
            Certificate::GeneralWitness(c) => &mut c.meta,
            Certificate::NongenInvariant(c) => &mut c.meta,
            Certificate::GeneralNongenInvariant(c) => &mut c.meta,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    /// Zero-based position of the step or row (or `usize::MAX` for global checks).
    pub index: usize,
    pub label: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub kind: String,
    pub passed: bool,
    /// What a pass establishes.
    pub statement: String,
    pub items: Vec<CheckItem>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.ok)
    }

    /// Positions of failing steps/rows, excluding global checks.
    pub fn failing_indices(&self) -> Vec<usize> {
        self.failures().map(|i| i.index).filter(|&i| i != usize::MAX).collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.kind, if self.passed { "PASS" } else { "FAIL" })?;
        for it in &self.items {
            if it.ok {
                continue;
            }
            writeln!(f, "  {} FAIL: {}", it.label, it.problems.join("; "))?;
        }
        if self.passed {
            writeln!(f, "  established: {}", self.statement)?;
        }
        Ok(())
    }
}
