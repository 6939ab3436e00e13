//! Approximation schemes on top of the decomposition: a PTAS for inputs
//! whose widths lie within a constant factor of each other, and a
//! recursive quasi-polynomial scheme for arbitrary inputs.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::oracle::DEFAULT_ORACLE_LIMIT;
use crate::scalar::Scalar;

pub mod ptas;
pub mod qptas;
pub mod small;

pub use ptas::{ptas, ptas_segment_bound, ptas_with, PtasReport};
pub use qptas::{
    guess_long, qptas, qptas_with_stats, Guess, LongCandidates, QptasOverrides, QptasReport, QptasStats, SchemeParams,
};
pub use small::{branch_and_bound, solve_small};

/// Shared search-node counter. Safe to tick from several threads; a limit
/// of `None` never runs out.
#[derive(Debug, Default)]
pub struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn unlimited() -> Self {
        Budget::new(None)
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// Accounts for one node, failing once the limit is passed.
    pub fn tick(&self) -> Result<()> {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        match self.limit {
            Some(limit) if used > limit => Err(Error::Budget { budget: limit, best: None }),
            _ => Ok(()),
        }
    }
}

/// Caps shared by the schemes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest instance handed to the subset oracle.
    pub oracle_limit: usize,
    pub node_budget: Option<u64>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { oracle_limit: DEFAULT_ORACLE_LIMIT, node_budget: None }
    }
}

pub(crate) fn check_unit_open(name: &str, v: &Scalar) -> Result<()> {
    if !v.is_positive() || *v >= Scalar::one() {
        return Err(Error::Parameter(format!("{name} must lie in (0, 1), got {v}")));
    }
    Ok(())
}
