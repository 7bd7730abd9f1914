//! Resource limits shared by the expensive computations.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_GENERATOR_CAP: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitExceeded {
    #[error("generator cap exceeded: {count} candidates > cap {cap}")]
    GeneratorCap { count: usize, cap: usize },
    #[error("time budget of {budget_ms} ms exhausted")]
    TimeBudget { budget_ms: u128 },
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of intermediate generators any single step may hold.
    pub generator_cap: usize,
    /// Wall-clock budget, measured from `started`.
    pub time_budget: Option<Duration>,
    pub started: Instant,
    /// Minimum interval between progress log lines.
    pub progress_interval: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            generator_cap: DEFAULT_GENERATOR_CAP,
            time_budget: None,
            started: Instant::now(),
            progress_interval: Duration::from_secs(10),
        }
    }
}

impl Limits {
    pub fn with_generator_cap(mut self, cap: usize) -> Self {
        self.generator_cap = cap;
        self
    }

    /// Sets a time budget starting now.
    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self.started = Instant::now();
        self
    }

    /// The same limits with the time budget restarted now.
    pub fn restarted(&self) -> Limits {
        Limits { started: Instant::now(), ..*self }
    }

    pub fn check_time(&self) -> Result<(), LimitExceeded> {
        match self.time_budget {
            Some(b) if self.started.elapsed() > b => Err(LimitExceeded::TimeBudget { budget_ms: b.as_millis() }),
            _ => Ok(()),
        }
    }

    pub fn check_count(&self, count: usize) -> Result<(), LimitExceeded> {
        if count > self.generator_cap {
            return Err(LimitExceeded::GeneratorCap { count, cap: self.generator_cap });
        }
        Ok(())
    }
}
