//! Seeded random coefficients for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratlin::Rational;

pub const DEFAULT_SEED: u64 = 20240607;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `len` integers drawn uniformly from `−3..=3`.
pub fn coefficients<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| Rational::from_integer(rng.random_range(-3i64..=3).into()))
        .collect()
}
