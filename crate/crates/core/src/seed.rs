//! Deterministic seed derivation for fanned-out Monte Carlo work.
//!
//! Per-trial seeds are pure functions of (root seed, index), so results do
//! not depend on scheduling or on how many workers run the trials.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent child seed from a root seed and an index.
pub fn derive(root: u64, index: u64) -> u64 {
    splitmix64(splitmix64(root) ^ splitmix64(index ^ 0x5851_F42D_4C95_7F2D))
}

/// The RNG used throughout the crate, constructed from a bare seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
