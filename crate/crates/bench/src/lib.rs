//! Inputs shared by the criterion benchmarks in `benches/`.

use mcs_hms_core::{make_suite, Objective, RngStream};

/// Member `index` of the classic10 suite at `dim`, built from a fixed seed.
pub fn suite_member(dim: usize, index: usize) -> Objective {
    make_suite("classic10", dim, 7).expect("supported dimension").swap_remove(index)
}

/// `n` uniform points in `[-100, 100]^dim`.
pub fn random_points(n: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = RngStream::from_seed(seed);
    (0..n).map(|_| (0..dim).map(|_| rng.uniform_range(-100.0, 100.0)).collect()).collect()
}

/// Paired samples with a small location shift and no ties.
pub fn paired_samples(n: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = RngStream::from_seed(seed);
    let x = (0..n).map(|_| rng.normal() + 0.3).collect();
    let y = (0..n).map(|_| rng.normal()).collect();
    (x, y)
}
