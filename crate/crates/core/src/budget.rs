use serde::Serialize;

use crate::linalg::random::DEFAULT_BOUND;
use crate::linalg::DEFAULT_PRIME;

/// Sampling budget shared by all randomized procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub seed: u64,
    /// Largest matrix size sampled.
    pub n_max: usize,
    /// Samples per size.
    pub trials: usize,
    /// Entries are drawn from `[−bound, bound]`.
    pub bound: i64,
    /// Modulus for the fast identity-testing backend.
    pub prime: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            seed: 0,
            n_max: 4,
            trials: 20,
            bound: DEFAULT_BOUND,
            prime: DEFAULT_PRIME,
        }
    }
}

impl Budget {
    pub fn with_seed(seed: u64) -> Self {
        Budget { seed, ..Budget::default() }
    }

    /// Size of the per-coordinate sample space.
    pub fn sample_space(&self) -> f64 {
        (2 * self.bound + 1) as f64
    }
}
