//! Work caps for exhaustive enumerations.

use crate::error::{Error, Result};

/// Default cap on elementary comparisons per invocation.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: u128,
    pub force: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            limit: DEFAULT_BUDGET,
            force: false,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            limit: u128::MAX,
            force: true,
        }
    }

    pub fn forced(self) -> Self {
        Budget { force: true, ..self }
    }

    pub fn check(&self, required: u128) -> Result<()> {
        if self.force || required <= self.limit {
            Ok(())
        } else {
            Err(Error::BudgetExceeded {
                required,
                budget: self.limit,
            })
        }
    }
}

/// Saturating product of work factors.
pub fn work(factors: &[u128]) -> u128 {
    factors.iter().fold(1u128, |acc, &f| acc.saturating_mul(f))
}
