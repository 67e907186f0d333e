//! The K-identification decision: membership of the channel output in the
//! union of decoding territories of the target set.
//!
//! The territory of message j under fading g is the closed region
//! 𝕋_{j,g} = {ȳ : Σ_t (ȳ_t − g·c̄_{j,t})² ≤ σ_Z² + τ_n}. The decoder knows
//! g (channel side information) and answers "in the target set" iff the
//! output lies in at least one territory of the set.

use crate::error::{Error, Result};
use crate::packing::Codebook;

/// A set of message indices (0-based) of size K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSet {
    indices: Vec<usize>,
}

impl TargetSet {
    /// Build from distinct indices into a codebook of size `m`; the stored
    /// set is sorted, so equal sets compare equal regardless of input order.
    pub fn new(mut indices: Vec<usize>, m: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::invalid("target set must be non-empty"));
        }
        if indices.len() > m {
            return Err(Error::invalid(format!(
                "target set size {} exceeds codebook size {m}",
                indices.len()
            )));
        }
        indices.sort_unstable();
        let before = indices.len();
        indices.dedup();
        if indices.len() != before {
            return Err(Error::invalid("target set indices must be distinct"));
        }
        if let Some(&max) = indices.last() {
            if max >= m {
                return Err(Error::IndexOutOfRange(format!(
                    "target index {max} not below codebook size {m}"
                )));
            }
        }
        Ok(TargetSet { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Cardinality K.
    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// True when every index of `self` also lies in `other`.
    pub fn is_subset_of(&self, other: &TargetSet) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }
}

/// Is `y` in the decoding territory of codeword `c` under fading `g`?
/// The boundary is closed: residual energy exactly σ² + τ is a yes.
pub fn in_territory(y: &[f64], c: &[f64], g: f64, sigma2: f64, tau: f64) -> Result<bool> {
    if y.len() != c.len() {
        return Err(Error::invalid(format!(
            "length mismatch: output has {} coordinates, codeword {}",
            y.len(),
            c.len()
        )));
    }
    if !(tau >= 0.0 && sigma2 >= 0.0) {
        return Err(Error::invalid(format!(
            "sigma2 and tau must be >= 0, got sigma2={sigma2}, tau={tau}"
        )));
    }
    let mut residual = 0.0;
    for (&yt, &ct) in y.iter().zip(c) {
        let d = yt - g * ct;
        residual += d * d;
    }
    Ok(residual <= sigma2 + tau)
}

/// Union-of-territories decision: true iff `y` lies in the territory of at
/// least one message of the target set. Short-circuits, and the outcome is
/// independent of iteration order (it is a pure union membership).
pub fn k_identify(
    y: &[f64],
    cb: &Codebook,
    target: &TargetSet,
    g: f64,
    sigma2: f64,
    tau: f64,
) -> Result<bool> {
    if let Some(&max) = target.indices().last() {
        if max >= cb.m() {
            return Err(Error::IndexOutOfRange(format!(
                "target index {max} not below codebook size {}",
                cb.m()
            )));
        }
    }
    for &j in target.indices() {
        if in_territory(y, &cb.codewords[j], g, sigma2, tau)? {
            return Ok(true);
        }
    }
    Ok(false)
}
