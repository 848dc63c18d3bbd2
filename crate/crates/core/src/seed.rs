//! Counter-based seed derivation.
//!
//! Every random stream in an experiment is keyed by `(master, index, role)`, so
//! adding trials or roles never shifts the randomness of existing ones.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Role tags for derived seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum SeedRole {
    Oracle = 1,
    Estimator = 2,
    Order = 3,
    Median = 4,
    Instance = 5,
    Churn = 6,
}

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, index: u64, role: SeedRole) -> u64 {
    mix64(mix64(mix64(master) ^ index) ^ (role as u64).wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
