//! Shared resource budgets.

use crate::par::Parallelism;
use std::time::Duration;

#[derive(Clone, Copy, Debug)]
pub struct Config {
    /// Wall-clock budget per factorization call.
    pub factoring_budget_ms: u64,
    /// Maximum group order for whole-group enumeration.
    pub enum_budget: u64,
    /// Maximum bitset width for subset-sum dynamic programming.
    pub dp_bits_budget: u64,
    /// Enables the long-running checks (whole Q⁻(5,3) profile, M11² PDS,
    /// the full sweep ranges).
    pub long_tests: bool,
    pub parallelism: Parallelism,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            factoring_budget_ms: 5000,
            enum_budget: 1 << 28,
            dp_bits_budget: 1 << 31,
            long_tests: false,
            parallelism: Parallelism::default(),
        }
    }
}

impl Config {
    pub fn factoring_budget(&self) -> Duration {
        Duration::from_millis(self.factoring_budget_ms)
    }
}
