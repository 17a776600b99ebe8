//! Fixed instances shared by the benchmarks.

use menurev::invariants::InstanceGen;
use menurev::{FiniteDistribution, Menu};

/// Random distribution with `n` atoms in `[0, 4]^k`, reproducible from `seed`.
pub fn distribution(seed: u64, k: usize, n: usize) -> FiniteDistribution {
    InstanceGen::new(seed).distribution(k, n, 0, 4, 4, true)
}

/// Random menu with `size` entries and prices in `[1, 10]`.
pub fn menu(seed: u64, k: usize, size: usize) -> Menu {
    InstanceGen::new(seed).menu(k, size, 1, 10, 4)
}
