//! The normalized slow-fading Gaussian channel Ȳ_t = g·x̄_t + Z̄_t.
//!
//! Fading is block-constant: one g per codeword transmission, drawn from a
//! [`FadingModel`] whose support is bounded away from zero (except for the
//! deliberately degenerate zero model used by the zero-fading experiment).
//! Noise is i.i.d. 𝒩(0, σ_Z²/n) per coordinate — the normalized domain in
//! which codewords satisfy ‖c̄‖ ≤ √A.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::params::ChannelParams;
use crate::seeding::{self, stream};

/// Distribution of the block-fading coefficient.
///
/// Non-degenerate models have support inside [γ, g_max] with γ > 0. The
/// channel is real-valued; fading is taken positive (the decoder knows g, so
/// a sign would be rotated away anyway).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingModel {
    /// Always the same coefficient.
    Constant { g: f64 },
    /// Uniform on [gamma, g_max].
    UniformInterval { gamma: f64, g_max: f64 },
    /// Rayleigh with the given scale, rejection-sampled into [gamma, g_max].
    TruncatedRayleigh { gamma: f64, g_max: f64, scale: f64 },
    /// Exactly zero — the regime in which identification is impossible.
    /// Only legal inside the degenerate-fading experiment.
    DegenerateZero,
}

impl FadingModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FadingModel::Constant { g } => {
                if !(g.is_finite() && g > 0.0) {
                    return Err(Error::InvalidModel(format!(
                        "constant fading needs g > 0, got {g}"
                    )));
                }
            }
            FadingModel::UniformInterval { gamma, g_max } => {
                if !(gamma > 0.0 && g_max.is_finite() && g_max >= gamma) {
                    return Err(Error::InvalidModel(format!(
                        "uniform fading needs 0 < gamma <= g_max, got [{gamma}, {g_max}]"
                    )));
                }
            }
            FadingModel::TruncatedRayleigh {
                gamma,
                g_max,
                scale,
            } => {
                if !(gamma > 0.0 && g_max.is_finite() && g_max >= gamma) {
                    return Err(Error::InvalidModel(format!(
                        "truncated Rayleigh needs 0 < gamma <= g_max, got [{gamma}, {g_max}]"
                    )));
                }
                if !(scale.is_finite() && scale > 0.0) {
                    return Err(Error::InvalidModel(format!(
                        "truncated Rayleigh needs scale > 0, got {scale}"
                    )));
                }
            }
            FadingModel::DegenerateZero => {}
        }
        Ok(())
    }

    /// Infimum of the support (0 for the degenerate model).
    pub fn gamma(&self) -> f64 {
        match *self {
            FadingModel::Constant { g } => g,
            FadingModel::UniformInterval { gamma, .. } => gamma,
            FadingModel::TruncatedRayleigh { gamma, .. } => gamma,
            FadingModel::DegenerateZero => 0.0,
        }
    }

    /// Supremum of the support.
    pub fn g_max(&self) -> f64 {
        match *self {
            FadingModel::Constant { g } => g,
            FadingModel::UniformInterval { g_max, .. } => g_max,
            FadingModel::TruncatedRayleigh { g_max, .. } => g_max,
            FadingModel::DegenerateZero => 0.0,
        }
    }

    /// Draw one coefficient. The model must already be validated.
    pub fn sample_with<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            FadingModel::Constant { g } => g,
            FadingModel::UniformInterval { gamma, g_max } => {
                gamma + (g_max - gamma) * rng.random::<f64>()
            }
            FadingModel::TruncatedRayleigh {
                gamma,
                g_max,
                scale,
            } => {
                // Rejection against the support; the truncated mass is
                // positive for every validated model, so this terminates
                // quickly in practice. The iteration cap turns a pathological
                // (but valid) parameterization into a visible panic rather
                // than a hang.
                for _ in 0..100_000_000u64 {
                    let u: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
                    let r = scale * (-2.0 * u.ln()).sqrt();
                    if (gamma..=g_max).contains(&r) {
                        return r;
                    }
                }
                panic!("truncated Rayleigh rejection sampling did not terminate");
            }
            FadingModel::DegenerateZero => 0.0,
        }
    }
}

/// One-shot fading draw from a fresh seeded stream.
pub fn sample_fading(model: &FadingModel, seed: u64) -> Result<f64> {
    model.validate()?;
    let mut rng = seeding::stream_rng(seed, stream::FADING, 0);
    Ok(model.sample_with(&mut rng))
}

/// Result of one channel use (one codeword transmission).
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelOutput {
    /// Received vector, length n.
    pub y: Vec<f64>,
    /// Fading coefficient that acted on the codeword.
    pub g_used: f64,
    /// Seed of the noise stream (for paired re-runs).
    pub noise_seed: u64,
}

/// A noise vector with per-coordinate variance sigma2/n, drawn from `rng`.
///
/// Exposed so that experiments can share one noise realization across
/// several channel uses (common random numbers).
pub fn scaled_noise<R: Rng>(rng: &mut R, n: usize, sigma2: f64) -> Vec<f64> {
    let scale = (sigma2 / n as f64).sqrt();
    (0..n)
        .map(|_| {
            let z: f64 = StandardNormal.sample(rng);
            scale * z
        })
        .collect()
}

/// Transmit a codeword: y_t = g·c̄_t + z_t with z i.i.d. 𝒩(0, σ_Z²/n).
///
/// The noise stream depends only on the seed — not on the codeword or g —
/// so transmitting two codewords under the same seed applies the identical
/// noise realization to both.
pub fn transmit(codeword: &[f64], g: f64, ch: &ChannelParams, seed: u64) -> Result<ChannelOutput> {
    if codeword.is_empty() {
        return Err(Error::invalid("codeword must be non-empty"));
    }
    if codeword.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("codeword entries must be finite"));
    }
    if !g.is_finite() {
        return Err(Error::invalid(format!(
            "fading coefficient must be finite, got {g}"
        )));
    }
    let mut rng = seeding::stream_rng(seed, stream::TRANSMIT, 0);
    let z = scaled_noise(&mut rng, codeword.len(), ch.sigma2());
    let y = codeword
        .iter()
        .zip(&z)
        .map(|(&c, &zt)| g * c + zt)
        .collect();
    Ok(ChannelOutput {
        y,
        g_used: g,
        noise_seed: seed,
    })
}
