//! Deterministic random-stream derivation.
//!
//! Every Monte Carlo trial draws from its own ChaCha stream keyed by
//! `(seed, trial index)`. Streams never depend on thread scheduling, so a run
//! is byte-identical whether it executes on one worker or many.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 step; the standard seed-expansion mixer.
#[inline]
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Expands a 64-bit seed into a 256-bit ChaCha key.
pub fn seed_key(seed: u64) -> [u8; 32] {
    let mut state = seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}

/// The generator for one trial: stream `index` of the cipher keyed by `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::from_seed(seed_key(seed));
    rng.set_stream(index);
    rng
}

/// Derives a sub-seed for row `index` of a sweep, so each row spans its own
/// full family of trial streams.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut state = seed ^ index.wrapping_mul(0xA24B_AED4_963E_E407);
    splitmix64(&mut state)
}
