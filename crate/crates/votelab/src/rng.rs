//! Deterministic per-trial random streams.
//!
//! Every trial draws from its own ChaCha8 stream, selected by
//! `(master_seed, trial_index)`. Trials can therefore be evaluated in any
//! order, on any number of workers, and still consume bit-identical
//! randomness. Discarded trials burn an index, never shared state.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Derives independent per-trial RNGs from a single master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialRng {
    master_seed: u64,
}

impl TrialRng {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// RNG for one trial index. Same `(seed, index)` pair, same stream.
    pub fn stream(&self, trial_index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(trial_index);
        rng
    }
}
