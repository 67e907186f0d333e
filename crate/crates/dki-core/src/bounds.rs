//! Closed-form quantities of the DKI slow-fading analysis.
//!
//! Everything here is a pure function of [`CodeParams`] and
//! [`ChannelParams`]: packing radius θ_n, decision slack τ_n, hypersphere
//! volumes, packing-density bounds, codebook-size bounds, the identification
//! rate interval, the converse minimum distance, and the analytic type I/II
//! error bounds. Volumes and codebook counts are carried in the log₂ domain
//! throughout — the linear-domain Γ(n/2 + 1) overflows beyond n ≈ 300.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::params::{ChannelParams, CodeParams};

/// Target-set size K = ⌈n^κ⌉ (from K = 2^{κ log₂ n} = n^κ).
///
/// The ceiling keeps K ≥ 1 and monotone in κ; a 1e−9 guard keeps `powf`
/// round-off from bumping an exact integer power (e.g. 100^0.5) to the next
/// integer.
pub fn target_set_size(n: usize, kappa: f64) -> Result<usize> {
    if n < 2 {
        return Err(Error::invalid(format!("n must be >= 2, got {n}")));
    }
    if !(0.0..1.0).contains(&kappa) {
        return Err(Error::invalid(format!(
            "kappa must lie in [0, 1), got {kappa}"
        )));
    }
    let raw = (n as f64).powf(kappa);
    Ok(((raw - 1e-9).ceil() as usize).max(1))
}

/// Packing radius squared θ_n = A·n^{−(1−(b+κ))/2}.
///
/// Strictly below A for b + κ < 1; exactly A at the degenerate boundary
/// b + κ = 1 (the inner packing ball shrinks to a point).
pub fn theta(code: &CodeParams, ch: &ChannelParams) -> f64 {
    let exponent = -(1.0 - (code.b() + code.kappa())) / 2.0;
    ch.a() * (code.n() as f64).powf(exponent)
}

/// Decision slack τ_n = γ²·θ_n/3 added to the noise variance in the
/// decoding-territory radius.
pub fn tau(code: &CodeParams, ch: &ChannelParams) -> f64 {
    ch.gamma() * ch.gamma() * theta(code, ch) / 3.0
}

/// log₂ of the volume of the n-ball of radius r:
/// Vol = π^{n/2}·rⁿ / Γ(n/2 + 1), evaluated via log-gamma.
pub fn sphere_log_volume(n: usize, r: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::invalid(format!("dimension must be >= 1, got {n}")));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::invalid(format!("radius must be > 0, got {r}")));
    }
    let nf = n as f64;
    let log2_gamma = statrs::function::gamma::ln_gamma(nf / 2.0 + 1.0) / LN_2;
    Ok(nf / 2.0 * PI.log2() + nf * r.log2() - log2_gamma)
}

/// Packing-density bounds for saturated packings, as log₂ values:
/// 2^{−n} ≤ Δ_n ≤ 2^{−0.599n} becomes (−n, −0.599·n).
pub fn packing_density_bounds(n: usize) -> (f64, f64) {
    let nf = n as f64;
    (-nf, -0.599 * nf)
}

/// Achievable codebook size: log₂M ≥ ((1−(b+κ))/4)·n·log₂n − 2n,
/// clamped at 0 (M ≥ 1 always; the raw bound goes negative at small n).
pub fn achievable_log_codebook(code: &CodeParams) -> f64 {
    let nf = code.n() as f64;
    let raw = (1.0 - (code.b() + code.kappa())) / 4.0 * nf * nf.log2() - 2.0 * nf;
    raw.max(0.0)
}

/// Converse codebook size:
/// log₂M ≤ (1+κ+b)·n·log₂n + (n/2)·log₂(1 + n^{−2(1+κ+b)}) − 0.599n.
pub fn converse_log_codebook(code: &CodeParams) -> f64 {
    let nf = code.n() as f64;
    let e = 1.0 + code.kappa() + code.b();
    // log₂(1 + x) via ln_1p: x underflows log2 at large n otherwise.
    let middle = nf / 2.0 * nf.powf(-2.0 * e).ln_1p() / LN_2;
    e * nf * nf.log2() + middle - 0.599 * nf
}

/// The identification-rate interval (1−κ)/4 ≤ C ≤ 1+κ.
pub fn rate_bounds(kappa: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&kappa) {
        return Err(Error::invalid(format!(
            "kappa must lie in [0, 1), got {kappa}"
        )));
    }
    Ok(((1.0 - kappa) / 4.0, 1.0 + kappa))
}

/// Converse minimum distance: codebooks with both error probabilities
/// vanishing must keep every codeword pair at distance ≥ 2√(n·ε_n′) with
/// ε_n′ = A/n^{2(1+κ+b)}. Algebraically equal to 2√A·n^{−(1+2(κ+b))/2}.
pub fn converse_min_distance(code: &CodeParams, ch: &ChannelParams) -> f64 {
    let nf = code.n() as f64;
    let eps = ch.a() * nf.powf(-2.0 * (1.0 + code.kappa() + code.b()));
    2.0 * (nf * eps).sqrt()
}

/// Analytic type-I error bound (Chebyshev on the own-territory residual):
/// P_{e,1} ≤ 27σ_Z⁴ / (A²γ⁴·n^{κ+b}), clamped to 1.
pub fn type1_error_bound(code: &CodeParams, ch: &ChannelParams) -> f64 {
    let s2 = ch.sigma2();
    let denom =
        ch.a() * ch.a() * ch.gamma().powi(4) * (code.n() as f64).powf(code.kappa() + code.b());
    (27.0 * s2 * s2 / denom).min(1.0)
}

/// Analytic type-II error bound and its two per-message components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Type2Bound {
    /// ζ₀ = 144σ_Z²(σ_Z² + τ_n) / (A²γ⁴·n^{κ+b}) — the cross-territory
    /// overshoot event, per target message.
    pub zeta0: f64,
    /// ζ₁ = 27σ_Z⁴ / (A²γ⁴·n^{κ+b}) — the own-residual overshoot event,
    /// per target message (same closed form as the type-I bound).
    pub zeta1: f64,
    /// Union bound over the K = n^κ target messages:
    /// (144σ_Z²(σ_Z² + τ_n) + 27σ_Z⁴) / (A²γ⁴·n^b), clamped to 1.
    pub composite: f64,
}

/// Analytic type-II error bound; see [`Type2Bound`] for the pieces.
pub fn type2_error_bound(code: &CodeParams, ch: &ChannelParams) -> Type2Bound {
    let s2 = ch.sigma2();
    let t = tau(code, ch);
    let a2g4 = ch.a() * ch.a() * ch.gamma().powi(4);
    let n_kb = (code.n() as f64).powf(code.kappa() + code.b());
    let n_b = (code.n() as f64).powf(code.b());
    let zeta0 = 144.0 * s2 * (s2 + t) / (a2g4 * n_kb);
    let zeta1 = 27.0 * s2 * s2 / (a2g4 * n_kb);
    let composite = ((144.0 * s2 * (s2 + t) + 27.0 * s2 * s2) / (a2g4 * n_b)).min(1.0);
    Type2Bound {
        zeta0,
        zeta1,
        composite,
    }
}

/// Aggregate report of every closed-form quantity at one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct BoundReport {
    pub theta_n: f64,
    pub tau_n: f64,
    pub k: usize,
    pub rate_lower: f64,
    pub rate_upper: f64,
    pub log2_m_lower: f64,
    pub log2_m_upper: f64,
    pub min_dist_converse: f64,
    pub type1_bound: f64,
    pub type2_bound: Type2Bound,
}

impl BoundReport {
    pub fn compute(code: &CodeParams, ch: &ChannelParams) -> Result<Self> {
        let (rate_lower, rate_upper) = rate_bounds(code.kappa())?;
        Ok(BoundReport {
            theta_n: theta(code, ch),
            tau_n: tau(code, ch),
            k: target_set_size(code.n(), code.kappa())?,
            rate_lower,
            rate_upper,
            log2_m_lower: achievable_log_codebook(code),
            log2_m_upper: converse_log_codebook(code),
            min_dist_converse: converse_min_distance(code, ch),
            type1_bound: type1_error_bound(code, ch),
            type2_bound: type2_error_bound(code, ch),
        })
    }
}
