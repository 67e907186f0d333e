//! Saturated sphere-packing codebooks by random sequential insertion.
//!
//! Codewords are centers of non-overlapping radius-r0 spheres, r0 = √θ_n,
//! placed inside the ball of radius R_inner = √A − √θ_n so that every
//! codeword meets the power constraint ‖c̄‖ ≤ √A. Saturation — "no further
//! sphere fits" — has no constructive characterization, so the builder uses
//! a proxy: insertion stops after `saturation_t` consecutive rejected
//! candidates. The [`coverage_certificate`] then validates the proxy
//! empirically: in a saturated arrangement, doubling the radii covers the
//! whole inner ball, so the covered fraction should be ≈ 1.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::bounds;
use crate::error::{Error, Result};
use crate::params::{ChannelParams, CodeParams};
use crate::seeding::{self, stream};

/// Hard cap on the projected codebook size before construction starts.
/// Brute-force neighbor checks are quadratic-ish in M; beyond this scale the
/// build would also not fit the memory budget of a desk run.
pub const DEFAULT_MAX_CODEWORDS: usize = 100_000;

/// Default saturation proxy: consecutive rejections before declaring the
/// packing saturated.
pub const DEFAULT_SATURATION_T: u64 = 5_000;

/// A packing codebook: M codeword centers with their geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    /// Block length (dimension).
    pub n: usize,
    /// Codeword centers; every inner Vec has length `n`.
    pub codewords: Vec<Vec<f64>>,
    /// Packing radius r0 = √θ_n.
    pub r0: f64,
    /// Center-placement radius R_inner = √A − √θ_n.
    pub r_inner: f64,
    /// Master seed of the construction.
    pub seed: u64,
    /// Consecutive-rejection count when insertion stopped.
    pub saturation_rejections: u64,
}

impl Codebook {
    /// Number of codewords M.
    pub fn m(&self) -> usize {
        self.codewords.len()
    }

    /// √A reconstructed from the geometry (centers ball plus packing radius).
    pub fn sqrt_a(&self) -> f64 {
        self.r_inner + self.r0
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

/// Uniform sample in the n-ball of radius r: Gaussian direction (spherical
/// symmetry) scaled to radius r·U^{1/n} (inverse CDF of the radial law).
fn sample_in_ball<R: Rng>(rng: &mut R, n: usize, r: f64) -> Vec<f64> {
    loop {
        let dir: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue; // probability-zero degenerate direction; redraw
        }
        let u: f64 = rng.random();
        let radius = r * u.powf(1.0 / n as f64);
        return dir.into_iter().map(|x| x * radius / norm).collect();
    }
}

/// Build a codebook from validated parameters; θ_n comes from the radius
/// schedule. See [`build_with_geometry`] for the construction itself.
pub fn build_codebook(
    code: &CodeParams,
    ch: &ChannelParams,
    seed: u64,
    saturation_t: u64,
) -> Result<Codebook> {
    let theta = bounds::theta(code, ch);
    build_with_geometry(
        code.n(),
        ch.a(),
        theta,
        seed,
        saturation_t,
        DEFAULT_MAX_CODEWORDS,
    )
}

/// Random sequential insertion with an explicit geometry (n, A, θ).
///
/// Candidates are uniform in the inner ball and rejected when closer than
/// 2r0 to an accepted center; insertion stops after `saturation_t`
/// consecutive rejections. Deterministic given (seed, geometry,
/// saturation_t). Errors with dimension-too-large when the volume-ratio cap
/// (√(A/θ))ⁿ — an upper bound on any feasible M — exceeds `max_codewords`.
pub fn build_with_geometry(
    n: usize,
    a: f64,
    theta: f64,
    seed: u64,
    saturation_t: u64,
    max_codewords: usize,
) -> Result<Codebook> {
    if n < 1 {
        return Err(Error::invalid(format!("dimension must be >= 1, got {n}")));
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::invalid(format!("power budget must be > 0, got {a}")));
    }
    if !(theta.is_finite() && theta > 0.0 && theta <= a) {
        return Err(Error::invalid(format!(
            "theta must lie in (0, A]; got theta={theta}, A={a}"
        )));
    }
    if saturation_t < 1 {
        return Err(Error::invalid("saturation_t must be >= 1"));
    }
    // Projected size from the volume ratio Vol(R_inner + r0)/Vol(r0) =
    // (√A/√θ)ⁿ, checked in the log domain so huge n cannot overflow.
    let log2_cap = n as f64 / 2.0 * (a / theta).log2();
    if log2_cap > (max_codewords as f64).log2() {
        return Err(Error::DimensionTooLarge(format!(
            "projected codebook size 2^{log2_cap:.1} exceeds the cap of {max_codewords} codewords"
        )));
    }

    let r0 = theta.sqrt();
    let r_inner = a.sqrt() - r0;
    let min_d2 = 4.0 * theta; // (2·r0)²

    let mut rng = seeding::stream_rng(seed, stream::PACKING, 0);
    let mut centers: Vec<Vec<f64>> = Vec::new();
    let mut consecutive = 0u64;
    while consecutive < saturation_t {
        let candidate = sample_in_ball(&mut rng, n, r_inner);
        if centers.iter().all(|c| dist2(c, &candidate) >= min_d2) {
            centers.push(candidate);
            consecutive = 0;
        } else {
            consecutive += 1;
        }
    }

    Ok(Codebook {
        n,
        codewords: centers,
        r0,
        r_inner,
        seed,
        saturation_rejections: consecutive,
    })
}

/// Outcome of checking a codebook against its own geometry and the channel
/// power budget. Comparisons carry 1e−12 relative slack so that a norm one
/// rounding step past the boundary does not fail a structurally valid build.
#[derive(Debug, Clone, Copy)]
pub struct ValidationReport {
    pub m: usize,
    /// Largest codeword norm.
    pub max_norm: f64,
    /// Smallest pairwise distance (infinite when M < 2).
    pub min_distance: f64,
    /// max_norm ≤ R_inner.
    pub power_ok: bool,
    /// min_distance ≥ 2·r0.
    pub distance_ok: bool,
    /// M ≤ Vol(R_inner + r0)/Vol(r0).
    pub cap_ok: bool,
    /// R_inner + r0 = √A and all codeword lengths equal n.
    pub geometry_ok: bool,
    /// log₂ of the volume-ratio cap.
    pub log2_cap: f64,
    /// Informational: log₂ density minus the −0.599n saturated-packing
    /// ceiling. Negative means the arrangement sits below the asymptotic
    /// ceiling; small-n and degenerate codebooks legitimately sit above it.
    pub density_margin_log2: f64,
    /// Conjunction of the four checks above.
    pub pass: bool,
}

/// Check power, minimum distance, the volume-ratio cap and geometry
/// consistency. Failures are reported, never raised.
pub fn validate_codebook(cb: &Codebook, ch: &ChannelParams) -> ValidationReport {
    const SLACK: f64 = 1e-12;
    let m = cb.m();

    let lengths_ok = cb.codewords.iter().all(|c| c.len() == cb.n);
    let max_norm = cb
        .codewords
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let mut min_d2 = f64::INFINITY;
    for i in 0..m {
        for j in (i + 1)..m {
            min_d2 = min_d2.min(dist2(&cb.codewords[i], &cb.codewords[j]));
        }
    }
    let min_distance = min_d2.sqrt();

    let power_ok = max_norm <= cb.r_inner + SLACK * cb.r_inner.max(1.0);
    let distance_ok = m < 2 || min_d2 >= 4.0 * cb.r0 * cb.r0 * (1.0 - SLACK);
    let log2_cap = cb.n as f64 * ((cb.r_inner + cb.r0) / cb.r0).log2();
    let cap_ok = (m as f64).log2() <= log2_cap + 1e-9;
    let geometry_ok =
        lengths_ok && cb.r0 > 0.0 && (cb.sqrt_a() - ch.a().sqrt()).abs() <= 1e-9 * ch.a().sqrt();

    // Density of the packing inside the enlarged ball of radius R_inner + r0,
    // relative to the −0.599n ceiling: log₂(M·Vol(r0)/Vol(R_inner+r0)) + 0.599n.
    let (_, density_upper) = bounds::packing_density_bounds(cb.n);
    let density_log2 = (m as f64).log2() - log2_cap;
    let density_margin_log2 = density_log2 - density_upper;

    ValidationReport {
        m,
        max_norm,
        min_distance,
        power_ok,
        distance_ok,
        cap_ok,
        geometry_ok,
        log2_cap,
        density_margin_log2,
        pass: power_ok && distance_ok && cap_ok && geometry_ok,
    }
}

/// Monte Carlo check of the saturation proxy: the fraction of uniform points
/// in the inner ball that lie within 2·r0 of some codeword. A saturated
/// packing covers everything once radii are doubled — any uncovered point
/// would itself have been an acceptable insertion candidate.
pub fn coverage_certificate(cb: &Codebook, samples: u64, seed: u64) -> Result<f64> {
    if samples < 1 {
        return Err(Error::invalid("samples must be >= 1"));
    }
    let threshold = 4.0 * cb.r0 * cb.r0;
    let covered: u64 = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeding::stream_rng(seed, stream::COVERAGE, i);
            let p = sample_in_ball(&mut rng, cb.n, cb.r_inner);
            let hit = cb.codewords.iter().any(|c| dist2(c, &p) <= threshold);
            u64::from(hit)
        })
        .sum();
    Ok(covered as f64 / samples as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch_unit() -> ChannelParams {
        ChannelParams::new(1.0, 1.0, 1.0, 2.0).unwrap()
    }

    #[test]
    fn small_disk_packing_lands_in_counting_window() {
        // n=2, A=1, forced θ = 0.0625 → r0 = 0.25, R_inner = 0.75. The
        // density lower bound 2^{−n} predicts at least ⌈2.25⌉ = 3 accepted
        // centers; the area-ratio cap allows at most 16.
        let cb = build_with_geometry(2, 1.0, 0.0625, 7, DEFAULT_SATURATION_T, 10_000).unwrap();
        assert!(
            (3..=16).contains(&cb.m()),
            "M = {} outside the [3, 16] window",
            cb.m()
        );
        let report = validate_codebook(&cb, &ch_unit());
        assert!(report.pass, "{report:?}");
        // This geometry is far from degenerate, so the saturated-packing
        // density ceiling (with one slack bit) genuinely applies.
        assert!(
            report.density_margin_log2 <= 1.0,
            "density margin {} above one slack bit",
            report.density_margin_log2
        );
    }

    #[test]
    fn degenerate_theta_gives_single_origin_codeword() {
        let cb = build_with_geometry(6, 1.0, 1.0, 3, 50, 10_000).unwrap();
        assert_eq!(cb.m(), 1);
        assert!(cb.codewords[0].iter().all(|&x| x == 0.0));
        assert_eq!(cb.saturation_rejections, 50);
        assert_eq!(coverage_certificate(&cb, 1_000, 9).unwrap(), 1.0);
    }

    #[test]
    fn construction_is_deterministic() {
        let code = CodeParams::new(8, 0.0, 0.5).unwrap();
        let a = build_codebook(&code, &ch_unit(), 42, DEFAULT_SATURATION_T).unwrap();
        let b = build_codebook(&code, &ch_unit(), 42, DEFAULT_SATURATION_T).unwrap();
        assert_eq!(a, b);
        let c = build_codebook(&code, &ch_unit(), 43, DEFAULT_SATURATION_T).unwrap();
        assert_ne!(a.codewords, c.codewords);
    }

    #[test]
    fn oversized_projection_is_rejected() {
        // (√(A/θ))ⁿ = 10⁴⁰ candidates projected — must refuse to build.
        let err = build_with_geometry(40, 1.0, 1e-80, 0, 10, DEFAULT_MAX_CODEWORDS).unwrap_err();
        assert!(matches!(err, Error::DimensionTooLarge(_)), "{err}");
    }

    #[test]
    fn validator_flags_duplicated_codeword() {
        let mut cb = build_with_geometry(4, 1.0, 0.25, 1, 200, 10_000).unwrap();
        cb.codewords.push(cb.codewords[0].clone());
        let report = validate_codebook(&cb, &ch_unit());
        assert!(!report.distance_ok && !report.pass);
        assert_eq!(report.min_distance, 0.0);
    }

    #[test]
    fn validator_flags_power_violation() {
        let mut cb = build_with_geometry(4, 1.0, 0.25, 1, 200, 10_000).unwrap();
        // Scale one codeword to norm 1.1·√A — past the budget.
        let target = 1.1 * cb.sqrt_a();
        let norm = cb.codewords[0].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            for x in &mut cb.codewords[0] {
                *x *= target / norm;
            }
        } else {
            cb.codewords[0][0] = target;
        }
        let report = validate_codebook(&cb, &ch_unit());
        assert!(!report.power_ok && !report.pass);
    }

    #[test]
    fn coverage_drops_when_codewords_are_deleted() {
        // Paired comparison with identical sample seeds: removing half the
        // codewords cannot increase the covered fraction, and for a geometry
        // with genuinely separated doubled balls it strictly decreases.
        let cb = build_with_geometry(8, 1.0, 0.12, 5, DEFAULT_SATURATION_T, 20_000).unwrap();
        assert!(cb.m() >= 4, "need a few codewords, got {}", cb.m());
        let full = coverage_certificate(&cb, 20_000, 123).unwrap();
        let mut half = cb.clone();
        half.codewords.truncate(cb.m() / 2);
        let reduced = coverage_certificate(&half, 20_000, 123).unwrap();
        assert!(
            reduced < full,
            "coverage did not drop: full {full}, halved {reduced}"
        );
    }

    #[test]
    fn saturated_coverage_is_high() {
        let cb = build_with_geometry(2, 1.0, 0.0625, 11, DEFAULT_SATURATION_T, 10_000).unwrap();
        let frac = coverage_certificate(&cb, 100_000, 77).unwrap();
        assert!(frac >= 0.999, "coverage {frac} below 0.999");
    }
}
