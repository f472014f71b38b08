//! Seed handling.
//!
//! Every random draw in the crate comes from a ChaCha8 stream
//! (`rand_chacha::ChaCha8Rng`) seeded with a 64-bit value. Independent
//! streams (latent channels, noise channels, permutation replicates) get
//! sub-seeds mixed from the parent seed and the stream index with
//! SplitMix64, so results never depend on thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Name of the generator, echoed into run configs.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha), SplitMix64 sub-seeds";

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic sub-seed for stream `index` of `seed`.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ splitmix64(index.wrapping_add(0x5851_F42D_4C95_7F2D)))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
