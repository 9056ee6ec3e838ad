//! Tolerance constants used across validation, verification, and tests,
//! each with the reasoning behind its magnitude.

/// Relative tolerance for feasibility checks on known-ratio sums and
/// products.
///
/// An arithmetic-mode instance with m < n needs sum(r) < n strictly; with
/// m = n it needs sum(r) = n, and a geometric-mode instance with m = n
/// needs prod(r) = 1 (checked as |sum(ln r)| below this threshold). The
/// inputs are user-supplied doubles, so exact equality is too strict:
/// 1e-9 admits values derived from ~1e6 accumulated roundings while still
/// rejecting genuinely inconsistent data.
pub const FEASIBILITY_REL_TOL: f64 = 1e-9;

/// Relative tolerance at which the extremal completion's measured mean
/// ratio must reproduce the closed-form bound.
///
/// Both sides are O(n) compositions of ln/exp, each correctly rounded to
/// ~1e-16; 1e-12 leaves four orders of headroom.
pub const SHARPNESS_REL_TOL: f64 = 1e-12;

/// Slack allowed when checking that the refined bound never exceeds the
/// classical two-ratio bound (margin >= -DOMINANCE_TOL).
pub const DOMINANCE_TOL: f64 = 1e-12;

/// How far a randomly drawn completion's mean ratio may exceed the
/// closed-form bound before it counts as a soundness violation.
pub const SOUNDNESS_EXCESS_TOL: f64 = 1e-12;

/// Maximum finite-difference gradient component accepted as "stationary"
/// at the closed-form optimal weights.
///
/// Central differences with a 1e-6 relative step have O(h^2) ~ 1e-12
/// truncation error and O(eps/h) ~ 1e-10 cancellation error, so 1e-6 is
/// four orders above the numerical floor.
pub const STATIONARITY_GRAD_TOL: f64 = 1e-6;

/// Relative step used for central finite differences on the objectives.
pub const FD_RELATIVE_STEP: f64 = 1e-6;

/// Absolute agreement required between the oracle's best ratio and the
/// closed-form bound after convergence.
pub const ORACLE_AGREEMENT_TOL: f64 = 1e-6;

/// How far above the closed-form bound the oracle's best ratio may land
/// before it counts as a bound violation rather than rounding noise.
pub const ORACLE_NOISE_TOL: f64 = 1e-10;

/// Relative tolerance for scale invariance of the mean ratio.
///
/// Rescaling shifts every log by ln(c); the shift cancels between the
/// two means up to one rounding per value.
pub const SCALE_INVARIANCE_TOL: f64 = 1e-14;
