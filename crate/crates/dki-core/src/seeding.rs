//! Deterministic sub-stream derivation for reproducible parallelism.
//!
//! Every random draw in the toolkit comes from a ChaCha8 generator keyed by
//! `(master seed, stream tag, index)`. Trials therefore own independent
//! streams that do not depend on execution order or thread count: running
//! trial 7 alone yields the same draws as running it inside a batch, so
//! count-sum merges are partition-independent. Reusing one `(tag, index)`
//! pair across two computations is how common random numbers are shared on
//! purpose (paired comparisons); distinct tags keep unrelated experiments
//! independent.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tags. Values are arbitrary but frozen: changing them changes every
/// seeded result.
pub mod stream {
    pub const PACKING: u64 = 1;
    pub const COVERAGE: u64 = 2;
    pub const TRANSMIT: u64 = 3;
    pub const FADING: u64 = 4;
    pub const TYPE1_NOISE: u64 = 5;
    pub const TYPE2_NOISE: u64 = 6;
    pub const DEGENERATE_A: u64 = 7;
    pub const DEGENERATE_B: u64 = 8;
    pub const CONVERSE_NOISE: u64 = 9;
    pub const TARGET: u64 = 10;
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for sub-stream `(tag, index)` of a master seed.
pub fn stream_rng(master: u64, tag: u64, index: u64) -> ChaCha8Rng {
    // Mix the three coordinates through SplitMix64 into a 256-bit key; the
    // chaining keeps nearby (master, tag, index) triples far apart.
    let mut state = master;
    let w0 = splitmix64(&mut state);
    state ^= tag.wrapping_mul(0xA076_1D64_78BD_642F);
    let w1 = splitmix64(&mut state);
    state ^= index.wrapping_mul(0xE703_7ED1_A0B4_28DB);
    let w2 = splitmix64(&mut state);
    let w3 = splitmix64(&mut state);

    let mut seed = [0u8; 32];
    seed[0..8].copy_from_slice(&w0.to_le_bytes());
    seed[8..16].copy_from_slice(&w1.to_le_bytes());
    seed[16..24].copy_from_slice(&w2.to_le_bytes());
    seed[24..32].copy_from_slice(&w3.to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}
