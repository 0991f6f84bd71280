//! Eavesdropping statistics for the ping-pong protocol.
//!
//! A lossy-channel intercept attack on the ping-pong protocol leaves each
//! transmitted bit in one of two modes — `u` (no symmetry operation) or `s`
//! (with it) — with fixed conditional distributions over the receiver pair
//! (Bob, Eve). For *finite* records, the resulting QBER and mutual
//! information are random variables over the attack outcomes, not the
//! per-bit constants (QBER 1/4, per-bit MI ~0.311) sometimes quoted for
//! them; the multi-bit MI at the balanced asymptotic point is
//! (3/4)·log2(3) − 1 ≈ 0.189. This crate makes those distinctions
//! computable:
//!
//! * [`model`] — bit strings, pair counts, QBER, the (b0, q) rate
//!   parameterization and its feasibility region, attainable QBER lattices;
//! * [`info`] — entropies and multi-bit mutual information, from counts and
//!   in closed form, plus the I(b0, q) surface and the per-bit value;
//! * [`channel`] — the attack as a classical channel: exact outcome
//!   enumeration, seeded sampling, extracted vs asymptotic pair frequencies;
//! * [`montecarlo`] — reproducible repeated-trial experiments and
//!   convergence studies;
//! * [`audit`] — recomputation audit of the published reference table for
//!   the '100110'/'susuus' example.
//!
//! Counting and probabilities are exact rationals ([`ExactProb`]); only
//! entropies and mutual information are floating-point. All types are
//! immutable values and all operations are pure functions, so everything is
//! safe to share across threads; sampling determinism comes from the seed
//! alone (see [`rng`]).

pub mod audit;
pub mod bits;
pub mod channel;
pub mod error;
pub mod exact_prob;
pub mod info;
pub mod model;
pub mod montecarlo;
pub mod rng;

pub use bits::{Attack, AttackPattern, BitString};
pub use channel::{
    asymptotic_frequencies, asymptotic_operating_point, attack_outcome_dist, enumerate_outcomes,
    extracted_frequencies, sample_transmission, ConditionalDist, EnsembleMeans,
    ExtractedFrequencies, FrequencyRow, OperatingPoint, OutcomeDist, OutcomeEnsemble, OutcomeEntry,
    Party, Role,
};
pub use error::{Error, Result};
pub use exact_prob::ExactProb;
pub use info::{
    mutual_information_closed_form, mutual_information_closed_form_exact,
    mutual_information_from_counts, shannon_entropy, single_bit_mutual_information, surface_grid,
    Distribution, MIResult, SurfaceCell,
};
pub use model::{
    feasible, feasible_exact, is_qber_attainable, nearest_attainable_qber, pair_counts, qber,
    qber_attainable, rates_from_params, JointCounts, RateVector,
};
pub use montecarlo::{
    convergence_study, run_experiment, AggregateReport, AlicePolicy, ConvergenceRow,
    ExperimentConfig, PatternPolicy, SummaryStats, TrialRecord,
};

/// Rounds to six decimals, the precision of every float this crate emits.
pub fn round6(value: f64) -> f64 {
    (value * 1e6).round() / 1e6
}
