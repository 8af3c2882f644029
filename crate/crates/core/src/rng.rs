//! Deterministic random streams.
//!
//! Every run owns one [`RngStream`]. Streams are ChaCha8 generators keyed
//! from a 64-bit seed, so a given seed produces the same draws on every
//! platform. [`derive_stream`] maps an experiment coordinate
//! `(master seed, algorithm, function, run)` to an independent stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 step: advances `state` by the golden gamma and returns the
/// finalized output.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mix(value: u64) -> u64 {
    let mut state = value;
    splitmix64(&mut state)
}

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    draws: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    /// Keys a ChaCha8 generator with four SplitMix64 outputs of `seed`.
    pub fn from_seed(seed: u64) -> Self {
        let mut state = seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        Self {
            seed,
            draws: 0,
            rng: ChaCha8Rng::from_seed(key),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of primitive draws taken so far. Used to check that two code
    /// paths consume a stream identically.
    pub fn draw_count(&self) -> u64 {
        self.draws
    }

    /// Uniform real in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.draws += 1;
        self.rng.random::<f64>()
    }

    /// Uniform real in `[low, high)`; returns `low` when the interval is empty.
    pub fn uniform_range(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.uniform()
    }

    /// Uniform index in `[0, n)`. Panics if `n == 0`.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "cannot draw an index from an empty range");
        self.draws += 1;
        // u64 keeps the draw independent of the platform's pointer width.
        self.rng.random_range(0..n as u64) as usize
    }

    /// Uniform integer in `[low, high]`.
    pub fn int_inclusive(&mut self, low: usize, high: usize) -> usize {
        assert!(low <= high, "empty integer range {low}..={high}");
        self.draws += 1;
        self.rng.random_range(low as u64..=high as u64) as usize
    }

    /// Standard normal draw.
    pub fn normal(&mut self) -> f64 {
        self.draws += 1;
        self.rng.sample(StandardNormal)
    }
}

/// Derives the stream for one `(master_seed, algorithm, function, run)`
/// coordinate. Each field is folded in through a SplitMix64 finalizer, so
/// the mapping is order sensitive and distinct tuples give unrelated keys.
pub fn derive_stream(
    master_seed: u64,
    algorithm_id: u64,
    function_id: u64,
    run_index: u64,
) -> RngStream {
    let mut h = mix(master_seed);
    for part in [algorithm_id, function_id, run_index] {
        h = mix(h ^ mix(part));
    }
    RngStream::from_seed(h)
}
