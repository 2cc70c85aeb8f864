//! Seeded random stream with a fixed, publicly specified algorithm.
//!
//! The state is xoshiro256** whose four words are the first four outputs of
//! SplitMix64 started at the user seed. Bounded integers use Lemire's
//! multiply-and-reject method, so every draw is a pure function of the seed
//! on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256StarStar};

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: Xoshiro256StarStar,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            inner: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `0..bound`. `bound` must be non-zero.
    #[inline]
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        let mut wide = (self.next_u64() as u128) * (bound as u128);
        let mut low = wide as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                wide = (self.next_u64() as u128) * (bound as u128);
                low = wide as u64;
            }
        }
        (wide >> 64) as u64
    }
}

/// Seed of the `index`-th matrix in a batch: one SplitMix64 output from state
/// `master + index`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    SplitMix64::seed_from_u64(master.wrapping_add(index)).next_u64()
}

/// Moves a uniformly random `count`-subset of `pool` into `pool[..count]`
/// (partial Fisher-Yates, one bounded draw per swap).
pub(crate) fn partial_shuffle<T>(pool: &mut [T], count: usize, rng: &mut RngStream) {
    let len = pool.len();
    debug_assert!(count <= len);
    for i in 0..count {
        let j = i + rng.below((len - i) as u64) as usize;
        pool.swap(i, j);
    }
}
