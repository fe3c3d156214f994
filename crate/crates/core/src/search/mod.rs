//! Exact search for long ±1 sequences of bounded HAP discrepancy, DIMACS
//! export for external SAT solvers, and certificate checking.

mod certificate;
mod cnf;
mod dfs;

pub use certificate::{verify_certificate, Certificate};
pub use cnf::{build_cnf, emit_cnf, CnfFormula};
pub use dfs::{dfs_longest, dfs_longest_cm, search, Outcome, SearchResult};

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    General,
    CompletelyMultiplicative,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::General => "general",
            Mode::CompletelyMultiplicative => "cm",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Mode::General),
            "cm" | "completely-multiplicative" => Ok(Mode::CompletelyMultiplicative),
            _ => Err(domain(format!("unknown search mode {s:?}"))),
        }
    }
}

pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(300);
pub const DEFAULT_MAX_N: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub bound: u32,
    pub mode: Mode,
    pub max_n: usize,
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl SearchConfig {
    pub fn new(bound: u32, mode: Mode) -> Self {
        SearchConfig {
            bound,
            mode,
            max_n: DEFAULT_MAX_N,
            node_limit: DEFAULT_NODE_LIMIT,
            time_limit: DEFAULT_TIME_LIMIT,
        }
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = limit;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_n == 0 {
            return Err(domain("max_n must be at least 1"));
        }
        if self.max_n > u32::MAX as usize {
            return Err(domain("max_n too large"));
        }
        Ok(())
    }
}
