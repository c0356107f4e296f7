use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Resource limits for one decision run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_tuples: u64,
    pub max_time: Duration,
    pub max_set: usize,
    pub max_stages: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_tuples: 1_000_000_000,
            max_time: Duration::from_secs(600),
            max_set: 50_000_000,
            max_stages: u64::MAX,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_tuples: u64::MAX,
            max_time: Duration::from_secs(u64::MAX / 4),
            max_set: usize::MAX,
            max_stages: u64::MAX,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resource {
    Tuples,
    WallClock,
    SetSize,
    Stages,
    BoxSize,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Resource::Tuples => "sum tuples",
            Resource::WallClock => "wall clock",
            Resource::SetSize => "set size",
            Resource::Stages => "stage count",
            Resource::BoxSize => "box size",
        };
        f.write_str(s)
    }
}

pub(crate) struct Meter {
    budget: Budget,
    start: Instant,
    tuples: u64,
    next_clock: u64,
}

const CLOCK_EVERY: u64 = 1 << 20;

impl Meter {
    pub fn new(budget: &Budget) -> Self {
        Meter { budget: budget.clone(), start: Instant::now(), tuples: 0, next_clock: CLOCK_EVERY }
    }

    #[inline]
    pub fn charge(&mut self, k: u64) -> Result<(), Resource> {
        self.tuples = self.tuples.saturating_add(k);
        if self.tuples > self.budget.max_tuples {
            return Err(Resource::Tuples);
        }
        if self.tuples >= self.next_clock {
            self.next_clock = self.tuples + CLOCK_EVERY;
            self.clock()?;
        }
        Ok(())
    }

    pub fn clock(&self) -> Result<(), Resource> {
        if self.start.elapsed() > self.budget.max_time {
            return Err(Resource::WallClock);
        }
        Ok(())
    }

    pub fn set_size(&self, size: usize) -> Result<(), Resource> {
        if size > self.budget.max_set {
            return Err(Resource::SetSize);
        }
        Ok(())
    }

    pub fn stage(&self, stage: u64) -> Result<(), Resource> {
        if stage > self.budget.max_stages {
            return Err(Resource::Stages);
        }
        self.clock()
    }

    pub fn tuples(&self) -> u64 {
        self.tuples
    }
}
