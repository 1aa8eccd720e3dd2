// Copyright 2026 qnv Contributors
// SPDX-License-Identifier: Apache-2.0

//! Per-run seeds and the documented random transforms.
//!
//! Every random draw comes from a `ChaCha8Rng` seeded through
//! [`SeedableRng::seed_from_u64`] with a per-index seed from [`derive_seed`].
//! ChaCha is specified bit-exactly, so draws do not depend on platform or on
//! the order in which runs execute.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer applied to `master_seed + (run_index + 1)·γ`.
///
/// The map from `run_index` to the pre-image is injective and the finalizer
/// is a bijection, so seeds for distinct indices under one master seed never
/// collide.
pub fn derive_seed(master_seed: u64, run_index: u64) -> u64 {
    let mut z = master_seed.wrapping_add(run_index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for one seeded run.
pub fn run_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw in `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut impl Rng) -> f64 {
    rng.random::<f64>()
}

/// Standard normal draw by the Box–Muller cosine branch.
///
/// Uses two uniforms `u1 ∈ (0, 1]`, `u2 ∈ [0, 1)` and returns
/// `√(−2 ln u1)·cos(2π u2)`; the sine partner is discarded so that every
/// call consumes exactly two uniforms.
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}
