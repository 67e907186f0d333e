//! Validated parameter sets shared by every module.

use crate::error::{Error, Result};

/// Code-construction parameters: block length and the two rate exponents.
///
/// `kappa` governs the target-set size K = ⌈n^κ⌉ and `b` is the slack
/// constant of the packing-radius schedule θ_n = A·n^{−(1−(b+κ))/2}.
///
/// The sum `b + kappa` may equal 1 exactly: θ_n then equals A, the inner
/// packing ball degenerates to a point and the codebook to a single codeword
/// at the origin. Sums above 1 are rejected (θ_n would exceed the power
/// budget).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeParams {
    n: usize,
    kappa: f64,
    b: f64,
}

impl CodeParams {
    /// Validates `n ≥ 2`, `κ ∈ [0, 1)`, `b ∈ (0, 1)`, `b + κ ≤ 1`.
    pub fn new(n: usize, kappa: f64, b: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("code.n must be >= 2, got {n}")));
        }
        if !(kappa.is_finite() && (0.0..1.0).contains(&kappa)) {
            return Err(Error::invalid(format!(
                "code.kappa must lie in [0, 1), got {kappa}"
            )));
        }
        if !(b.is_finite() && b > 0.0 && b < 1.0) {
            return Err(Error::invalid(format!(
                "code.b must lie in (0, 1), got {b}"
            )));
        }
        if b + kappa > 1.0 {
            return Err(Error::invalid(format!(
                "code.b + code.kappa must be <= 1, got {}",
                b + kappa
            )));
        }
        Ok(CodeParams { n, kappa, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Same exponents at a different block length.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        CodeParams::new(n, self.kappa, self.b)
    }
}

/// Channel parameters: power budget, noise variance and the fading support.
///
/// `a` is the average power budget (normalized codewords satisfy ‖c̄‖ ≤ √A),
/// `sigma2` the noise variance σ_Z², `gamma` the infimum of the fading
/// support and `g_max` its supremum.
///
/// `sigma2 = 0` is accepted as the noiseless calibration limit even though
/// a physical channel has σ_Z² > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    a: f64,
    sigma2: f64,
    gamma: f64,
    g_max: f64,
}

impl ChannelParams {
    pub fn new(a: f64, sigma2: f64, gamma: f64, g_max: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::invalid(format!("channel.a must be > 0, got {a}")));
        }
        if !(sigma2.is_finite() && sigma2 >= 0.0) {
            return Err(Error::invalid(format!(
                "channel.sigma2 must be >= 0, got {sigma2}"
            )));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::invalid(format!(
                "channel.gamma must be > 0, got {gamma}"
            )));
        }
        if !(g_max.is_finite() && g_max >= gamma) {
            return Err(Error::invalid(format!(
                "channel.g_max must be >= channel.gamma, got {g_max}"
            )));
        }
        Ok(ChannelParams {
            a,
            sigma2,
            gamma,
            g_max,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn g_max(&self) -> f64 {
        self.g_max
    }
}
