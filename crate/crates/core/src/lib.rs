//! Sharp upper bounds on the ratio of geometric to arithmetic mean of n
//! positive numbers when m of them are known as multiples of either
//! mean, together with the machinery to verify them.
//!
//! The crate has three layers:
//!
//! - [`bounds`]: closed-form evaluation of the refined bounds, the
//!   classical two-ratio bounds they improve on, and the gap bound —
//!   all in log-domain arithmetic so extreme inputs stay finite.
//! - [`lambda`]: the weighted bound family behind the closed forms; any
//!   positive weight vector gives a valid bound and the closed forms are
//!   the family minima, which makes optimality checkable.
//! - [`oracle`]: an independent constrained maximizer over all
//!   completions of an instance, used to certify that each bound is
//!   sound (never exceeded) and sharp (attained).
//!
//! Instances, completions, and the mean ratio itself live in
//! [`instance`], [`completion`], and [`mean`].

pub mod bounds;
pub mod completion;
pub mod error;
pub mod instance;
pub mod lambda;
pub mod mean;
pub mod oracle;
pub mod tolerances;

pub use bounds::{
    dominance_margin, tung_bound_am, tung_bound_gm, tung_gap, xia_bound_am, xia_bound_gm,
    BoundReport, Formula,
};
pub use completion::{
    extremal_completion_am, extremal_completion_gm, random_completion, Completion,
};
pub use error::BoundError;
pub use instance::{Feasibility, KnownRatios, Mode, Verdict};
pub use lambda::{
    finite_difference_gradient, objective_f, objective_g, optimal_lambdas_am, optimal_lambdas_gm,
    LambdaVector,
};
pub use mean::mean_ratio;
pub use oracle::{
    ascend, dominance_grid, maximize_ratio, soundness_sweep, Ascent, DominancePoint, OracleConfig,
    OracleResult, SoundnessReport,
};
