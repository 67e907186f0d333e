//! Simulation and verification toolkit for deterministic K-identification
//! (DKI) over Gaussian slow-fading channels.
//!
//! The receiver in a K-identification system does not decode the transmitted
//! message; it only decides whether the message belongs to a target set 𝕂 of
//! size K. Over a slow-fading Gaussian channel with channel side information
//! at the decoder, deterministic codes for this task reach super-exponential
//! codebook sizes M = 2^{(n log n)R}. This crate provides the finite-n,
//! computable artifacts of that theory:
//!
//! - [`bounds`]: every closed-form quantity — packing radii θ_n and decision
//!   slack τ_n, hypersphere log-volumes, packing-density bounds, codebook-size
//!   and rate bounds, analytic type I/II error bounds.
//! - [`packing`]: saturated sphere-packing codebook construction by random
//!   sequential insertion, validation, and a Monte Carlo coverage certificate.
//! - [`channel`]: the normalized channel Ȳ = g·x̄ + Z̄ with block-constant
//!   fading and noise variance σ_Z²/n per coordinate.
//! - [`decoder`]: the union-of-territories membership decision.
//! - [`montecarlo`]: type I/II error estimation with worst-case-over-fading
//!   evaluation, plus the zero-fading and minimum-distance experiments.
//!
//! Everything is deterministic given a master seed; parallel trial execution
//! never changes results (sub-streams are derived per trial, and merges are
//! order-independent count sums).

pub mod bounds;
pub mod channel;
pub mod decoder;
pub mod error;
pub mod io;
pub mod montecarlo;
pub mod packing;
pub mod params;
pub mod seeding;

pub use bounds::{BoundReport, Type2Bound};
pub use channel::{ChannelOutput, FadingModel};
pub use decoder::TargetSet;
pub use error::{Error, Result};
pub use montecarlo::{Coupling, ErrorEstimate, GGrid};
pub use packing::{Codebook, ValidationReport};
pub use params::{ChannelParams, CodeParams};
