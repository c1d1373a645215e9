//! Seed derivation.
//!
//! All per-match and per-player seeds come from the SplitMix64 finalizer
//! applied in a fixed chain:
//!
//! ```text
//! match_seed  = mix64(mix64(mix64(master ^ 0x9E3779B97F4A7C15) ^ pair_index) ^ repetition)
//! player_seed = mix64(match_seed ^ SIDE_SALT[side])
//! ```
//!
//! The derivation does not depend on thread count or scheduling.

use super::action::Side;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const SIDE_A_SALT: u64 = 0xA5A5_A5A5_0000_0001;
const SIDE_B_SALT: u64 = 0x5A5A_5A5A_0000_0002;

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from `parent` for stream number `stream`.
pub fn derive(parent: u64, stream: u64) -> u64 {
    mix64(mix64(parent ^ GOLDEN) ^ stream)
}

pub fn match_seed(master_seed: u64, pair_index: u64, repetition: u64) -> u64 {
    mix64(derive(master_seed, pair_index) ^ repetition)
}

pub fn player_seed(match_seed: u64, side: Side) -> u64 {
    let salt = match side {
        Side::A => SIDE_A_SALT,
        Side::B => SIDE_B_SALT,
    };
    mix64(match_seed ^ salt)
}
