//! Step budgets for exhaustive searches.
//!
//! Every brute-force routine computes its total step count before doing any
//! work and refuses to start when that exceeds the budget, so a budget
//! failure is deterministic and never leaves partial results behind.

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 2_000_000_000;
pub const BUDGET_ENV: &str = "RANKCRIT_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env().unwrap_or(Budget { limit: DEFAULT_BUDGET })
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit: limit.max(1) }
    }

    pub fn unlimited() -> Self {
        Budget { limit: u64::MAX }
    }

    pub fn from_env() -> Option<Self> {
        let s = std::env::var(BUDGET_ENV).ok()?;
        parse_budget(&s).ok().map(Budget::new)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Fails unless `steps` fits.
    pub fn check(&self, steps: u128) -> Result<()> {
        if steps > self.limit as u128 {
            Err(Error::BudgetExceeded { needed: steps, budget: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn check_big(&self, steps: &num_bigint::BigUint) -> Result<()> {
        use num_traits::ToPrimitive;
        match steps.to_u128() {
            Some(s) => self.check(s),
            None => Err(Error::BudgetExceeded { needed: u128::MAX, budget: self.limit }),
        }
    }
}

/// Accepts plain integers as well as `1e9` / `2.5e6` style values.
pub fn parse_budget(s: &str) -> Result<u64> {
    let s = s.trim().replace('_', "");
    if let Ok(v) = s.parse::<u64>() {
        return if v == 0 { Err(Error::InvalidArgument("budget must be positive".into())) } else { Ok(v) };
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 1.0 && v <= u64::MAX as f64 => Ok(v as u64),
        _ => Err(Error::InvalidArgument(format!("bad budget `{s}`"))),
    }
}
