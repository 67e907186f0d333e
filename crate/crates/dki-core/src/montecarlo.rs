//! Monte Carlo estimation of identification error probabilities.
//!
//! Type I is the rejection of a message inside the target set; type II the
//! acceptance of one outside it. Both are evaluated worst-case over the
//! fading support: the supremum over g is realized as a maximum over a
//! finite ascending [`GGrid`]. Within one estimator the per-trial noise
//! realization is shared across the whole grid (common random numbers), so
//! grid points are paired comparisons; distinct experiments draw from
//! distinct tagged streams and stay independent.
//!
//! Every estimator is deterministic given its seed and independent of batch
//! partitioning: trial t always uses sub-stream (seed, tag, t), and merges
//! are count sums.

use rayon::prelude::*;

use crate::bounds;
use crate::channel::scaled_noise;
use crate::decoder::{k_identify, TargetSet};
use crate::error::{Error, Result};
use crate::packing::Codebook;
use crate::params::{ChannelParams, CodeParams};
use crate::seeding::{self, stream};

/// A Monte Carlo frequency with its batch size, 3σ binomial half-width
/// 3·√(p̂(1−p̂)/trials), the fading value attaining the grid maximum, and
/// the master seed that reproduces it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorEstimate {
    pub p_hat: f64,
    pub trials: u64,
    pub half_width: f64,
    pub g_worst: f64,
    pub seed: u64,
}

impl ErrorEstimate {
    fn from_count(count: u64, trials: u64, g: f64, seed: u64) -> Self {
        let p_hat = count as f64 / trials as f64;
        ErrorEstimate {
            p_hat,
            trials,
            half_width: 3.0 * (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
            g_worst: g,
            seed,
        }
    }
}

/// Finite ascending surrogate for the fading support [γ, g_max]; the first
/// point is always γ itself.
#[derive(Debug, Clone, PartialEq)]
pub struct GGrid {
    points: Vec<f64>,
}

impl GGrid {
    /// `count` equally spaced points from γ to g_max (a single point when
    /// count = 1 or the interval is degenerate).
    pub fn linspace(gamma: f64, g_max: f64, count: usize) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::invalid(format!("grid needs gamma > 0, got {gamma}")));
        }
        if !(g_max.is_finite() && g_max >= gamma) {
            return Err(Error::invalid(format!(
                "grid needs g_max >= gamma, got {g_max}"
            )));
        }
        if count < 1 {
            return Err(Error::invalid("grid needs at least one point"));
        }
        if count == 1 || g_max == gamma {
            return Ok(GGrid {
                points: vec![gamma],
            });
        }
        let step = (g_max - gamma) / (count - 1) as f64;
        let mut points: Vec<f64> = (0..count).map(|i| gamma + step * i as f64).collect();
        points[0] = gamma;
        points[count - 1] = g_max; // endpoints exact regardless of step rounding
        Ok(GGrid { points })
    }

    /// Explicit points: non-empty, finite, positive, strictly ascending.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("grid needs at least one point"));
        }
        if points.iter().any(|g| !g.is_finite() || *g <= 0.0) {
            return Err(Error::invalid("grid points must be finite and > 0"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("grid points must be strictly ascending"));
        }
        Ok(GGrid { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }
}

/// Decision-territory slack derived from the codebook geometry:
/// τ = γ²·r0²/3 (with r0² = θ_n). Keeping this derivation in one place makes
/// hand-placed codebooks use the same threshold as constructed ones.
pub fn decision_tau(cb: &Codebook, ch: &ChannelParams) -> f64 {
    ch.gamma() * ch.gamma() * cb.r0 * cb.r0 / 3.0
}

fn check_experiment_inputs(cb: &Codebook, target: &TargetSet, trials: u64) -> Result<()> {
    if trials < 1 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    if cb.codewords.is_empty() {
        return Err(Error::invalid("codebook must have at least one codeword"));
    }
    if cb.codewords.iter().any(|c| c.len() != cb.n) {
        return Err(Error::invalid("codebook codeword lengths must all equal n"));
    }
    if let Some(&max) = target.indices().last() {
        if max >= cb.m() {
            return Err(Error::IndexOutOfRange(format!(
                "target index {max} not below codebook size {}",
                cb.m()
            )));
        }
    }
    Ok(())
}

/// Shared engine: transmit codeword `i` `trials` times, evaluate the
/// k-identification decision at every grid point under the same per-trial
/// noise, and count either misses (type I) or hits (type II).
#[allow(clippy::too_many_arguments)]
fn decision_counts(
    cb: &Codebook,
    i: usize,
    target: &TargetSet,
    ch: &ChannelParams,
    grid: &GGrid,
    trials: u64,
    seed: u64,
    tag: u64,
    count_misses: bool,
) -> Vec<u64> {
    let tau = decision_tau(cb, ch);
    let sigma2 = ch.sigma2();
    let n = cb.n;
    let c_i = &cb.codewords[i];
    let gpts = grid.points();

    (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; gpts.len()],
            |mut acc, t| {
                let mut rng = seeding::stream_rng(seed, tag, t);
                let z = scaled_noise(&mut rng, n, sigma2);
                let mut y = vec![0.0; n];
                for (gi, &g) in gpts.iter().enumerate() {
                    for (yt, (&ct, &zt)) in y.iter_mut().zip(c_i.iter().zip(&z)) {
                        *yt = g * ct + zt;
                    }
                    let inside = k_identify(&y, cb, target, g, sigma2, tau)
                        .expect("inputs validated before the trial loop");
                    if inside != count_misses {
                        acc[gi] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; gpts.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

fn pick_worst(counts: &[u64], grid: &GGrid, trials: u64, seed: u64) -> ErrorEstimate {
    // Strictly-greater keeps ties at the smallest g.
    let mut best = 0;
    for (gi, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = gi;
        }
    }
    ErrorEstimate::from_count(counts[best], trials, grid.points()[best], seed)
}

/// Per-grid-point type-I estimates (rejecting the true message `i ∈ target`).
///
/// The noise enters the decision only through the residual ‖Z̄‖² once the
/// decoder removes g·c̄_i, so with the shared per-trial noise the curve is
/// exactly flat across the grid — a built-in diagnostic.
pub fn type1_error_curve(
    cb: &Codebook,
    i: usize,
    target: &TargetSet,
    ch: &ChannelParams,
    grid: &GGrid,
    trials: u64,
    seed: u64,
) -> Result<Vec<ErrorEstimate>> {
    check_experiment_inputs(cb, target, trials)?;
    if !target.contains(i) {
        return Err(Error::invalid(format!(
            "type-I experiment needs i in the target set, got i={i}"
        )));
    }
    let counts = decision_counts(
        cb,
        i,
        target,
        ch,
        grid,
        trials,
        seed,
        stream::TYPE1_NOISE,
        true,
    );
    Ok(counts
        .iter()
        .zip(grid.points())
        .map(|(&c, &g)| ErrorEstimate::from_count(c, trials, g, seed))
        .collect())
}

/// Worst-case type-I estimate: the grid maximum of [`type1_error_curve`].
pub fn estimate_type1(
    cb: &Codebook,
    i: usize,
    target: &TargetSet,
    ch: &ChannelParams,
    grid: &GGrid,
    trials: u64,
    seed: u64,
) -> Result<ErrorEstimate> {
    check_experiment_inputs(cb, target, trials)?;
    if !target.contains(i) {
        return Err(Error::invalid(format!(
            "type-I experiment needs i in the target set, got i={i}"
        )));
    }
    let counts = decision_counts(
        cb,
        i,
        target,
        ch,
        grid,
        trials,
        seed,
        stream::TYPE1_NOISE,
        true,
    );
    Ok(pick_worst(&counts, grid, trials, seed))
}

/// Per-grid-point type-II estimates (accepting the false message `i ∉ target`).
pub fn type2_error_curve(
    cb: &Codebook,
    i: usize,
    target: &TargetSet,
    ch: &ChannelParams,
    grid: &GGrid,
    trials: u64,
    seed: u64,
) -> Result<Vec<ErrorEstimate>> {
    check_experiment_inputs(cb, target, trials)?;
    if target.contains(i) {
        return Err(Error::invalid(format!(
            "type-II experiment needs i outside the target set, got i={i}"
        )));
    }
    let counts = decision_counts(
        cb,
        i,
        target,
        ch,
        grid,
        trials,
        seed,
        stream::TYPE2_NOISE,
        false,
    );
    Ok(counts
        .iter()
        .zip(grid.points())
        .map(|(&c, &g)| ErrorEstimate::from_count(c, trials, g, seed))
        .collect())
}

/// Worst-case type-II estimate: the grid maximum of [`type2_error_curve`].
pub fn estimate_type2(
    cb: &Codebook,
    i: usize,
    target: &TargetSet,
    ch: &ChannelParams,
    grid: &GGrid,
    trials: u64,
    seed: u64,
) -> Result<ErrorEstimate> {
    check_experiment_inputs(cb, target, trials)?;
    if target.contains(i) {
        return Err(Error::invalid(format!(
            "type-II experiment needs i outside the target set, got i={i}"
        )));
    }
    let counts = decision_counts(
        cb,
        i,
        target,
        ch,
        grid,
        trials,
        seed,
        stream::TYPE2_NOISE,
        false,
    );
    Ok(pick_worst(&counts, grid, trials, seed))
}

/// Per-trial type-II decisions at a single fading value, on the same noise
/// sub-streams as [`type2_error_curve`] with the same seed. Lets callers
/// verify that target-set monotonicity holds trial by trial, not just in
/// the aggregate.
pub fn type2_trial_hits(
    cb: &Codebook,
    i: usize,
    target: &TargetSet,
    ch: &ChannelParams,
    g: f64,
    trials: u64,
    seed: u64,
) -> Result<Vec<bool>> {
    check_experiment_inputs(cb, target, trials)?;
    if target.contains(i) {
        return Err(Error::invalid(format!(
            "type-II experiment needs i outside the target set, got i={i}"
        )));
    }
    let tau = decision_tau(cb, ch);
    let sigma2 = ch.sigma2();
    let c_i = &cb.codewords[i];
    Ok((0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seeding::stream_rng(seed, stream::TYPE2_NOISE, t);
            let z = scaled_noise(&mut rng, cb.n, sigma2);
            let y: Vec<f64> = c_i.iter().zip(&z).map(|(&ct, &zt)| g * ct + zt).collect();
            k_identify(&y, cb, target, g, sigma2, tau)
                .expect("inputs validated before the trial loop")
        })
        .collect())
}

/// Noise coupling between the two transmissions of a paired experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    /// One noise realization per trial, shared by both transmissions.
    /// Makes complementary events sum to exactly 1.
    Shared,
    /// Independent realizations — unbiased joint estimates.
    Independent,
}

/// Zero-fading experiment: with g = 0 the channel output carries no message
/// information, every territory collapses onto the same ball around the
/// origin, and rejecting a true message is the complement of accepting a
/// false one. Returns (P̂_{e,1}(i1), P̂_{e,2}(i2, target)) at g = 0.
#[allow(clippy::too_many_arguments)]
pub fn degenerate_fading_experiment(
    cb: &Codebook,
    i1: usize,
    i2: usize,
    target: &TargetSet,
    ch: &ChannelParams,
    trials: u64,
    seed: u64,
    coupling: Coupling,
) -> Result<(f64, f64)> {
    check_experiment_inputs(cb, target, trials)?;
    if i1 >= cb.m() || i2 >= cb.m() {
        return Err(Error::IndexOutOfRange(format!(
            "message indices ({i1}, {i2}) must be below codebook size {}",
            cb.m()
        )));
    }
    if !target.contains(i1) {
        return Err(Error::invalid(format!(
            "i1 = {i1} must lie in the target set"
        )));
    }
    if target.contains(i2) {
        return Err(Error::invalid(format!(
            "i2 = {i2} must lie outside the target set"
        )));
    }
    let tau = decision_tau(cb, ch);
    let sigma2 = ch.sigma2();
    let n = cb.n;

    let (misses, hits) = (0..trials)
        .into_par_iter()
        .fold(
            || (0u64, 0u64),
            |(mut misses, mut hits), t| {
                // g = 0: the output of either transmission is pure noise.
                let mut rng_a = seeding::stream_rng(seed, stream::DEGENERATE_A, t);
                let y1 = scaled_noise(&mut rng_a, n, sigma2);
                let inside1 = k_identify(&y1, cb, target, 0.0, sigma2, tau)
                    .expect("inputs validated before the trial loop");
                let inside2 = match coupling {
                    Coupling::Shared => inside1,
                    Coupling::Independent => {
                        let mut rng_b = seeding::stream_rng(seed, stream::DEGENERATE_B, t);
                        let y2 = scaled_noise(&mut rng_b, n, sigma2);
                        k_identify(&y2, cb, target, 0.0, sigma2, tau)
                            .expect("inputs validated before the trial loop")
                    }
                };
                if !inside1 {
                    misses += 1;
                }
                if inside2 {
                    hits += 1;
                }
                (misses, hits)
            },
        )
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    Ok((misses as f64 / trials as f64, hits as f64 / trials as f64))
}

/// One point of the minimum-distance experiment curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConversePoint {
    pub distance: f64,
    pub p1: f64,
    pub p2: f64,
    /// p1 + p2 computed from the summed counts, so the shared-noise
    /// complementary case at d = 0 yields exactly 1.0.
    pub error_sum: f64,
    /// Sum of the two 3σ half-widths.
    pub half_width_sum: f64,
}

/// Two-codeword distance sweep behind the converse argument: codewords at
/// ±d/2 along the first axis, target {0}, fading fixed at γ. As d shrinks
/// below the converse minimum distance the two transmissions become
/// indistinguishable and P̂_{e,1} + P̂_{e,2} climbs toward 1.
///
/// Noise is shared per trial across both roles and all distances, so the
/// curve is a paired comparison.
pub fn converse_distance_experiment(
    n: usize,
    ch: &ChannelParams,
    code: &CodeParams,
    distances: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<ConversePoint>> {
    if trials < 1 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    if distances.is_empty() {
        return Err(Error::invalid("need at least one distance"));
    }
    let code = code.with_n(n)?;
    let theta = bounds::theta(&code, ch);
    let r0 = theta.sqrt();
    let r_inner = ch.a().sqrt() - r0;
    let tau = bounds::tau(&code, ch);
    let sigma2 = ch.sigma2();
    let g = ch.gamma();

    for &d in distances {
        if !(d.is_finite() && d >= 0.0) {
            return Err(Error::invalid(format!("distances must be >= 0, got {d}")));
        }
        if d > 2.0 * r_inner * (1.0 + 1e-12) {
            return Err(Error::invalid(format!(
                "distance {d} exceeds the inner-ball diameter {}",
                2.0 * r_inner
            )));
        }
    }

    let mut curve = Vec::with_capacity(distances.len());
    for &d in distances {
        let mut c1 = vec![0.0; n];
        let mut c2 = vec![0.0; n];
        c1[0] = d / 2.0;
        c2[0] = -d / 2.0;
        let cb = Codebook {
            n,
            codewords: vec![c1, c2],
            r0,
            r_inner,
            seed,
            saturation_rejections: 0,
        };
        let target = TargetSet::new(vec![0], 2)?;

        let (misses, hits) = (0..trials)
            .into_par_iter()
            .fold(
                || (0u64, 0u64),
                |(mut misses, mut hits), t| {
                    let mut rng = seeding::stream_rng(seed, stream::CONVERSE_NOISE, t);
                    let z = scaled_noise(&mut rng, n, sigma2);
                    let y1: Vec<f64> = cb.codewords[0]
                        .iter()
                        .zip(&z)
                        .map(|(&ct, &zt)| g * ct + zt)
                        .collect();
                    let y2: Vec<f64> = cb.codewords[1]
                        .iter()
                        .zip(&z)
                        .map(|(&ct, &zt)| g * ct + zt)
                        .collect();
                    let inside1 = k_identify(&y1, &cb, &target, g, sigma2, tau)
                        .expect("inputs validated before the trial loop");
                    let inside2 = k_identify(&y2, &cb, &target, g, sigma2, tau)
                        .expect("inputs validated before the trial loop");
                    if !inside1 {
                        misses += 1;
                    }
                    if inside2 {
                        hits += 1;
                    }
                    (misses, hits)
                },
            )
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

        let e1 = ErrorEstimate::from_count(misses, trials, g, seed);
        let e2 = ErrorEstimate::from_count(hits, trials, g, seed);
        curve.push(ConversePoint {
            distance: d,
            p1: e1.p_hat,
            p2: e2.p_hat,
            error_sum: (misses + hits) as f64 / trials as f64,
            half_width_sum: e1.half_width + e2.half_width,
        });
    }
    Ok(curve)
}

/// One row of the codebook-scaling sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub kappa: f64,
    pub b: f64,
    pub m: usize,
    pub log2_m: f64,
    /// Empirical rate ratio log₂M / (n·log₂n).
    pub ratio: f64,
    /// Converse ceiling for the same ratio.
    pub converse_ratio: f64,
    /// ratio ≤ converse_ratio (with 1e−12 slack).
    pub within_converse: bool,
}

/// Build a codebook per block length and compare the realized scale against
/// the converse ceiling.
pub fn scaling_sweep(
    n_list: &[usize],
    kappa: f64,
    b: f64,
    ch: &ChannelParams,
    seed: u64,
    saturation_t: u64,
) -> Result<Vec<SweepRow>> {
    if n_list.is_empty() {
        return Err(Error::invalid("sweep needs at least one block length"));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let code = CodeParams::new(n, kappa, b)?;
        let cb = crate::packing::build_codebook(&code, ch, seed, saturation_t)?;
        let m = cb.m();
        let log2_m = (m as f64).log2();
        let denom = n as f64 * (n as f64).log2();
        let ratio = log2_m / denom;
        let converse_ratio = bounds::converse_log_codebook(&code) / denom;
        rows.push(SweepRow {
            n,
            kappa,
            b,
            m,
            log2_m,
            ratio,
            converse_ratio,
            within_converse: ratio <= converse_ratio + 1e-12,
        });
    }
    Ok(rows)
}

/// Uniformly random K-subset of messages excluding `exclude`.
pub fn target_set_random(m: usize, exclude: usize, k: usize, seed: u64) -> Result<TargetSet> {
    use rand::seq::SliceRandom;
    if exclude >= m {
        return Err(Error::IndexOutOfRange(format!(
            "excluded index {exclude} not below codebook size {m}"
        )));
    }
    if k < 1 || k > m - 1 {
        return Err(Error::invalid(format!(
            "target size must lie in [1, {}], got {k}",
            m - 1
        )));
    }
    let mut pool: Vec<usize> = (0..m).filter(|&j| j != exclude).collect();
    let mut rng = seeding::stream_rng(seed, stream::TARGET, 0);
    pool.shuffle(&mut rng);
    pool.truncate(k);
    TargetSet::new(pool, m)
}

/// The K codewords closest to codeword `i` (excluding `i` itself) — the
/// adversarial target set that stresses the union bound hardest. Ties break
/// toward the smaller index.
pub fn target_set_nearest(cb: &Codebook, i: usize, k: usize) -> Result<TargetSet> {
    let m = cb.m();
    if i >= m {
        return Err(Error::IndexOutOfRange(format!(
            "message index {i} not below codebook size {m}"
        )));
    }
    if k < 1 || k > m - 1 {
        return Err(Error::invalid(format!(
            "target size must lie in [1, {}], got {k}",
            m - 1
        )));
    }
    let c_i = &cb.codewords[i];
    let mut by_distance: Vec<(f64, usize)> = (0..m)
        .filter(|&j| j != i)
        .map(|j| {
            let d2: f64 = cb.codewords[j]
                .iter()
                .zip(c_i)
                .map(|(&x, &y)| (x - y) * (x - y))
                .sum();
            (d2, j)
        })
        .collect();
    by_distance.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
    by_distance.truncate(k);
    TargetSet::new(by_distance.into_iter().map(|(_, j)| j).collect(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hand-placed codebook: valid geometry, codewords on the first axis.
    fn line_codebook(n: usize, a: f64, theta: f64, offsets: &[f64]) -> Codebook {
        let r0 = theta.sqrt();
        let r_inner = a.sqrt() - r0;
        let codewords = offsets
            .iter()
            .map(|&o| {
                let mut c = vec![0.0; n];
                c[0] = o;
                c
            })
            .collect();
        Codebook {
            n,
            codewords,
            r0,
            r_inner,
            seed: 0,
            saturation_rejections: 0,
        }
    }

    fn unit_channel(sigma2: f64) -> ChannelParams {
        ChannelParams::new(1.0, sigma2, 1.0, 2.0).unwrap()
    }

    #[test]
    fn grid_construction() {
        let g = GGrid::linspace(1.0, 2.0, 5).unwrap();
        assert_eq!(g.points(), &[1.0, 1.25, 1.5, 1.75, 2.0]);
        assert_eq!(GGrid::linspace(1.0, 1.0, 4).unwrap().points(), &[1.0]);
        assert!(GGrid::linspace(0.0, 1.0, 3).is_err());
        assert!(GGrid::from_points(vec![1.0, 1.0]).is_err());
        assert!(GGrid::from_points(vec![]).is_err());
        assert!(GGrid::from_points(vec![0.5, 1.5]).is_ok());
    }

    #[test]
    fn noiseless_type1_is_zero() {
        let cb = line_codebook(8, 1.0, 0.04, &[0.4, -0.4]);
        let ch = unit_channel(0.0);
        let target = TargetSet::new(vec![0], 2).unwrap();
        let grid = GGrid::linspace(1.0, 2.0, 3).unwrap();
        let est = estimate_type1(&cb, 0, &target, &ch, &grid, 200, 1).unwrap();
        assert_eq!(est.p_hat, 0.0);
        assert_eq!(est.half_width, 0.0);
    }

    #[test]
    fn noiseless_type2_is_zero_when_separated() {
        // σ² = 0 leaves territory radius √τ = γ·r0/√3 < distance between the
        // faded codewords, so the false message is never accepted.
        let cb = line_codebook(8, 1.0, 0.04, &[0.4, -0.4]);
        let ch = unit_channel(0.0);
        let target = TargetSet::new(vec![0], 2).unwrap();
        let grid = GGrid::linspace(1.0, 2.0, 3).unwrap();
        let est = estimate_type2(&cb, 1, &target, &ch, &grid, 200, 1).unwrap();
        assert_eq!(est.p_hat, 0.0);
    }

    #[test]
    fn membership_preconditions_are_enforced() {
        let cb = line_codebook(4, 1.0, 0.04, &[0.4, -0.4]);
        let ch = unit_channel(1.0);
        let target = TargetSet::new(vec![0], 2).unwrap();
        let grid = GGrid::linspace(1.0, 1.0, 1).unwrap();
        assert!(estimate_type1(&cb, 1, &target, &ch, &grid, 10, 0).is_err());
        assert!(estimate_type2(&cb, 0, &target, &ch, &grid, 10, 0).is_err());
    }

    #[test]
    fn type1_curve_is_exactly_flat_under_shared_noise() {
        // The decision event is g-independent and trials share noise across
        // the grid, so every grid point sees identical counts.
        let cb = line_codebook(16, 1.0, 0.09, &[0.3, -0.3]);
        let ch = unit_channel(1.0);
        let target = TargetSet::new(vec![0], 2).unwrap();
        let grid = GGrid::linspace(1.0, 2.0, 5).unwrap();
        let curve = type1_error_curve(&cb, 0, &target, &ch, &grid, 500, 7).unwrap();
        assert!(curve.iter().all(|e| e.p_hat == curve[0].p_hat), "{curve:?}");
    }

    #[test]
    fn estimates_are_seed_deterministic() {
        let cb = line_codebook(12, 1.0, 0.04, &[0.4, -0.4, 0.0]);
        let ch = unit_channel(0.5);
        let target = TargetSet::new(vec![0, 2], 3).unwrap();
        let grid = GGrid::linspace(1.0, 2.0, 3).unwrap();
        let a = estimate_type2(&cb, 1, &target, &ch, &grid, 400, 99).unwrap();
        let b = estimate_type2(&cb, 1, &target, &ch, &grid, 400, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn type2_is_monotone_in_target_per_trial() {
        let cb = line_codebook(8, 4.0, 0.09, &[0.9, -0.9, 0.3, -0.3, 1.5]);
        let ch = ChannelParams::new(4.0, 1.0, 1.0, 1.0).unwrap();
        let small = TargetSet::new(vec![0], 5).unwrap();
        let large = TargetSet::new(vec![0, 2, 3], 5).unwrap();
        let hits_small = type2_trial_hits(&cb, 4, &small, &ch, 1.0, 300, 5).unwrap();
        let hits_large = type2_trial_hits(&cb, 4, &large, &ch, 1.0, 300, 5).unwrap();
        for (t, (s, l)) in hits_small.iter().zip(&hits_large).enumerate() {
            assert!(
                !s || *l,
                "trial {t}: hit for the subset but not the superset"
            );
        }
    }

    #[test]
    fn degenerate_shared_sums_to_one_exactly() {
        let cb = line_codebook(16, 1.0, 0.09, &[0.3, -0.3]);
        let ch = unit_channel(1.0);
        let target = TargetSet::new(vec![0], 2).unwrap();
        // Power-of-two trials keep both frequencies exact dyadics.
        let (p1, p2) =
            degenerate_fading_experiment(&cb, 0, 1, &target, &ch, 1024, 3, Coupling::Shared)
                .unwrap();
        assert_eq!(p1 + p2, 1.0);
    }

    #[test]
    fn degenerate_independent_concentrates_near_one() {
        let cb = line_codebook(16, 1.0, 0.09, &[0.3, -0.3]);
        let ch = unit_channel(1.0);
        let target = TargetSet::new(vec![0], 2).unwrap();
        let (p1, p2) =
            degenerate_fading_experiment(&cb, 0, 1, &target, &ch, 10_000, 3, Coupling::Independent)
                .unwrap();
        assert!(
            (p1 + p2 - 1.0).abs() < 0.03,
            "sum {} too far from 1",
            p1 + p2
        );
    }

    #[test]
    fn degenerate_validates_membership() {
        let cb = line_codebook(8, 1.0, 0.09, &[0.3, -0.3]);
        let ch = unit_channel(1.0);
        let target = TargetSet::new(vec![0], 2).unwrap();
        assert!(
            degenerate_fading_experiment(&cb, 1, 0, &target, &ch, 10, 0, Coupling::Shared).is_err()
        );
        assert!(
            degenerate_fading_experiment(&cb, 0, 0, &target, &ch, 10, 0, Coupling::Shared).is_err()
        );
    }

    #[test]
    fn converse_curve_starts_at_one_and_trends_down() {
        let ch = ChannelParams::new(16.0, 1.0, 1.0, 1.0).unwrap();
        let code = CodeParams::new(64, 0.0, 0.5).unwrap();
        // d from 0 to the full indistinguishability range.
        let distances = [0.0, 0.7, 1.4, 2.1, 2.8];
        let curve = converse_distance_experiment(64, &ch, &code, &distances, 2048, 11).unwrap();
        assert_eq!(
            curve[0].error_sum, 1.0,
            "d = 0 must be exactly complementary"
        );
        let first = curve[1].error_sum;
        let last = curve.last().unwrap().error_sum;
        assert!(
            last < first,
            "error sum did not decrease: {first} at d={} vs {last} at d={}",
            distances[1],
            distances[4]
        );
        for w in curve.windows(2) {
            assert!(
                w[1].error_sum <= w[0].error_sum + w[0].half_width_sum + w[1].half_width_sum,
                "adjacent increase beyond combined half-widths: {w:?}"
            );
        }
    }

    #[test]
    fn converse_rejects_oversized_distances() {
        let ch = unit_channel(1.0);
        let code = CodeParams::new(16, 0.0, 0.5).unwrap();
        // r_inner = 1 − 16^{−1/8} ≈ 0.293, so d = 1 does not fit.
        let err = converse_distance_experiment(16, &ch, &code, &[1.0], 10, 0).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)), "{err}");
    }

    #[test]
    fn sweep_rows_stay_within_the_converse() {
        let ch = unit_channel(1.0);
        let rows = scaling_sweep(&[4, 6, 8], 0.0, 0.5, &ch, 21, 500).unwrap();
        assert_eq!(rows.len(), 3);
        for row in &rows {
            assert!(row.within_converse, "{row:?}");
            assert!(row.m >= 1);
        }
        // Degenerate boundary: θ = A forces M = 1 and ratio 0.
        let degenerate = scaling_sweep(&[2], 0.5, 0.5, &ch, 21, 500).unwrap();
        assert_eq!(degenerate[0].m, 1);
        assert_eq!(degenerate[0].ratio, 0.0);
    }

    #[test]
    fn target_policies() {
        let cb = line_codebook(4, 9.0, 0.01, &[0.0, 0.1, 0.5, -0.2, 1.0]);
        let nearest = target_set_nearest(&cb, 0, 2).unwrap();
        assert_eq!(nearest.indices(), &[1, 3]);
        let random = target_set_random(5, 0, 3, 42).unwrap();
        assert_eq!(random.k(), 3);
        assert!(!random.contains(0));
        assert_eq!(
            target_set_random(5, 0, 3, 42).unwrap(),
            random,
            "random policy must be seed-deterministic"
        );
        assert!(target_set_nearest(&cb, 0, 5).is_err());
        assert!(target_set_random(5, 9, 2, 0).is_err());
    }
}
