use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_STEPS: u64 = 100_000_000;
pub const DEFAULT_DENSE_CAP: usize = 2048;
pub const DEFAULT_SHELL_CAP: u64 = 1_000_000;

/// Work limits shared by every brute-force oracle and the dense lab.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Elementary steps allowed per enumeration.
    pub steps: u64,
    /// Largest vertex count the dense lab will materialize.
    pub dense_cap: usize,
    /// Largest sphere that will be enumerated vertex by vertex.
    pub shell_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { steps: DEFAULT_STEPS, dense_cap: DEFAULT_DENSE_CAP, shell_cap: DEFAULT_SHELL_CAP }
    }
}

impl Budget {
    pub fn with_steps(steps: u64) -> Self {
        Self { steps, ..Self::default() }
    }

    pub fn check(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.steps as u128 {
            Err(Error::Budget { what: what.to_string(), needed, budget: self.steps })
        } else {
            Ok(())
        }
    }

    pub fn fits(&self, needed: u128) -> bool {
        needed <= self.steps as u128
    }
}
