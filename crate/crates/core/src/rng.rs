//! Seeded pseudo-random streams.
//!
//! ChaCha8 is used everywhere so that a given seed produces the same stream
//! on every platform and in every build.

use rand::SeedableRng;

pub type Rng = rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}
