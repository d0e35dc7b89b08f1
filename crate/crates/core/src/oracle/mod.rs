//! Independent checks of the exact constructions: random lattice points,
//! Hermite-reduced generator witnesses and finite-field survival counts.

pub mod finite_field;
pub mod hermite;
pub mod sampling;

pub use finite_field::{cube_grid, ff_first_hit, ff_hit_count, ff_survival, ff_survival_grid, FfConfig, SurvivalEstimate};
pub use hermite::{hermite_reduce, witness_for_generator};
pub use sampling::{sample_lattice_valuation, SampleConfig};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for trial `trial` of a run seeded with `seed`; independent of scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
