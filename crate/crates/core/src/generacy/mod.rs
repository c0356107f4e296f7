//! The decision engine for 0-generacy.

mod budget;
mod cache;
mod constant;
mod general;
pub(crate) mod reduce;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nvec::NatVec;

pub use budget::{Budget, Resource};
pub use cache::{Cache, CacheEntry};
pub use constant::{decide_const, ConstDerivation, ConstEngine, ConstReach, ConstRun};
pub use general::{decide_general, GeneralDerivation, GeneralEngine, GeneralRun, ReachState};

/// Storage strategy for reach-sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Literal sets; the reference semantics.
    Full,
    /// Only `≤`-minimal elements are stored and summed.
    #[default]
    Antichain,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Mode::Full),
            "antichain" => Ok(Mode::Antichain),
            _ => Err(Error::Parse(format!("unknown mode {s:?} (expected full or antichain)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Antichain => "antichain",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Verdict {
    Generating { witness_index: usize, stage: u64 },
    NotGenerating { fixpoint_stage: u64 },
    BudgetExceeded { stage: u64, resource: Resource },
}

impl Verdict {
    pub fn is_generating(&self) -> bool {
        matches!(self, Verdict::Generating { .. })
    }

    pub fn is_not_generating(&self) -> bool {
        matches!(self, Verdict::NotGenerating { .. })
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Verdict::BudgetExceeded { .. })
    }

    /// Same outcome, ignoring stage counts and witness indices.
    pub fn same_outcome(&self, other: &Verdict) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }

    pub fn stage(&self) -> u64 {
        match *self {
            Verdict::Generating { stage, .. } => stage,
            Verdict::NotGenerating { fixpoint_stage } => fixpoint_stage,
            Verdict::BudgetExceeded { stage, .. } => stage,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Generating { witness_index, stage } => {
                write!(f, "generating (zero reached at index {witness_index}, stage {stage})")
            }
            Verdict::NotGenerating { fixpoint_stage } => {
                write!(f, "not generating (fixpoint at stage {fixpoint_stage})")
            }
            Verdict::BudgetExceeded { stage, resource } => {
                write!(f, "budget exceeded ({resource}) at stage {stage}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecideOptions {
    pub mode: Mode,
    pub budget: Budget,
    pub provenance: bool,
    pub cross_check: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { mode: Mode::Antichain, budget: Budget::default(), provenance: false, cross_check: false }
    }
}

impl DecideOptions {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_provenance(mut self) -> Self {
        self.provenance = true;
        self
    }
}

/// Decide `h`. Constant inputs go through the constant-case recursion;
/// with `cross_check` the general recursion is run too and must agree.
pub fn decide(h: &NatVec, opts: &DecideOptions) -> Result<Verdict> {
    if h.is_constant() {
        let run = decide_const(h.get(0), h.dim(), opts)?;
        if opts.cross_check {
            let g = decide_general(h, opts)?;
            if run.verdict.is_decided() && g.verdict.is_decided() && !run.verdict.same_outcome(&g.verdict) {
                return Err(Error::Domain(format!(
                    "cross-check failed for {h}: constant path {} vs general path {}",
                    run.verdict, g.verdict
                )));
            }
        }
        Ok(run.verdict)
    } else {
        Ok(decide_general(h, opts)?.verdict)
    }
}

/// [`decide`] memoised on the canonical (sorted) form of `h`.
pub fn decide_cached(h: &NatVec, opts: &DecideOptions, cache: &Cache) -> Result<Verdict> {
    let key = h.canonical();
    if let Some(e) = cache.get(&key) {
        return Ok(e.verdict);
    }
    let v = decide(&key, opts)?;
    if v.is_decided() {
        cache.insert(CacheEntry { vector: key, verdict: v, digest: None });
    }
    Ok(v)
}
