//! Deterministic seed derivation.
//!
//! Every randomized operation in this crate takes an explicit `u64` seed and
//! expands it into a ChaCha8 stream. Independent substreams (the cause draw,
//! the noise draw, the train/test shuffle, one stream per Monte-Carlo trial)
//! are derived *from coordinates, not from execution order*, so results are
//! identical no matter how work is scheduled across threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Substream tag for the cause draw inside [`crate::dist::AnmSpec::generate_pair`].
pub const STREAM_CAUSE: u64 = 0x01;
/// Substream tag for the noise draw inside [`crate::dist::AnmSpec::generate_pair`].
pub const STREAM_NOISE: u64 = 0x02;
/// Substream tag for the train/test shuffle inside decoupled RESIT.
pub const STREAM_SPLIT: u64 = 0x03;

/// SplitMix64 output function: a fast, well-mixed 64-bit finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of an independent substream from a parent seed and a tag.
///
/// Equivalent to `derive_seed(parent, &[tag])`.
pub fn substream(parent: u64, tag: u64) -> u64 {
    derive_seed(parent, &[tag])
}

/// Hashes a master seed together with a coordinate path into a new seed.
///
/// The path encodes the logical position of a work item (scenario index,
/// grid-value bits, trial index, ...) so that every cell of a sweep owns a
/// reproducible stream regardless of scheduling.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    let mut h = splitmix64(master ^ 0xA076_1D64_78BD_642F);
    for &component in path {
        h = splitmix64(h ^ splitmix64(component));
    }
    h
}

/// Expands a derived seed into the crate's standard PRNG stream.
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
