//! Seeded random streams.
//!
//! Every stream is a ChaCha8 generator seeded from a 64-bit value through
//! `SeedableRng::seed_from_u64`. ChaCha output is specified bit-for-bit, so a
//! seed yields the same draws on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for sub-component `index` of the run seeded with `seed`.
    ///
    /// The derived seed is `seed ^ splitmix64(index)`, so adding or removing
    /// components never shifts the draws of the others.
    pub fn substream(seed: u64, index: u64) -> Self {
        Self::new(seed ^ splitmix64(index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[lo, hi)`. Returns `lo` when the interval is empty.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return lo;
        }
        let u: f64 = self.inner.random();
        let v = lo + u * (hi - lo);
        // rounding can land exactly on `hi`
        if v >= hi {
            lo
        } else {
            v
        }
    }

    /// Uniform draw in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.inner.random()
    }
}

/// SplitMix64 finalizer, used to spread small integers over 64 bits.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
