//! Seed derivation shared by every randomized operation in the workspace.
//!
//! Replicated computations (Monte-Carlo chunks, experiment replicas,
//! annealing restarts) each receive `split_seed(seed, index)` so that
//! results do not depend on scheduling or thread count.

/// Derives an independent stream seed from a base seed and a replica index
/// using the SplitMix64 finalizer.
pub fn split_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ (index.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
