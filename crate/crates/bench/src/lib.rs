//! Shared inputs for the criterion benches.

use troplat_core::oracle::sampling::random_lattice;
use troplat_core::oracle::trial_rng;
use troplat_core::LatticeMatrix;

/// `count` random full-row-rank `n × n` lattices, reproducible from `seed`.
pub fn square_lattices(count: usize, n: usize, seed: u64) -> Vec<LatticeMatrix> {
    (0..count as u64)
        .map(|k| random_lattice(&mut trial_rng(seed, k), n, n, 5, 0, 3))
        .collect()
}
