//! Benchmark-only crate; see `benches/core_ops.rs`.
//!
//! Shared fixtures for the benchmarks live here so they are compiled and
//! type-checked by `cargo test --workspace` as well.

use dki_core::Codebook;

/// A power- and distance-valid codebook placed by hand: codewords on the
/// first axis, geometry (A, θ) explicit.
pub fn line_codebook(n: usize, a: f64, theta: f64, offsets: &[f64]) -> Codebook {
    let r0 = theta.sqrt();
    Codebook {
        n,
        codewords: offsets
            .iter()
            .map(|&o| {
                let mut c = vec![0.0; n];
                c[0] = o;
                c
            })
            .collect(),
        r0,
        r_inner: a.sqrt() - r0,
        seed: 0,
        saturation_rejections: 0,
    }
}

/// Evenly spread offsets in [−limit, limit].
pub fn spread_offsets(count: usize, limit: f64) -> Vec<f64> {
    (0..count)
        .map(|i| {
            if count == 1 {
                0.0
            } else {
                -limit + 2.0 * limit * i as f64 / (count - 1) as f64
            }
        })
        .collect()
}
