//! Error type shared by the bound evaluators and the oracle.

use crate::instance::Mode;

/// Everything that can go wrong when evaluating a bound or running the
/// oracle. Feasibility problems carry the verdict text produced by
/// [`crate::instance::KnownRatios::validate`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundError {
    /// The instance fails one of its invariants; the payload names the
    /// first violated one.
    #[error("infeasible instance: {0}")]
    Infeasible(String),

    /// An operation specific to one mean reference was called with an
    /// instance declared relative to the other.
    #[error("mode mismatch: operation expects {expected}, instance is {actual}")]
    ModeMismatch { expected: Mode, actual: Mode },

    /// `mean_ratio` was called with no values.
    #[error("mean ratio of an empty sample is undefined")]
    EmptyInput,

    /// A sample value, ratio, or extreme was not a strictly positive
    /// finite number.
    #[error("values must be positive finite numbers")]
    NonPositiveValue,

    /// Gap bound inputs with smallest > largest.
    #[error("extremes are disordered: smallest exceeds largest")]
    DisorderedExtremes,

    /// A two-ratio bound was evaluated outside its stated domain; the
    /// payload names the violated inequality.
    #[error("outside the bound's domain: {0} is violated")]
    TungDomain(&'static str),

    /// A weight vector contained a nonpositive or non-finite entry.
    #[error("lambda weights must be positive finite numbers")]
    NonPositiveLambda,

    /// The weight vector length does not match the instance's number of
    /// known ratios.
    #[error("lambda length {got} does not match the instance's m = {expected}")]
    LambdaLength { expected: usize, got: usize },

    /// The geometric-mode objective's denominator is not positive, so
    /// the expression is no longer an upper bound there.
    #[error("denominator not positive: lambda outside the valid bound region")]
    LambdaOutsideValidRegion,

    /// m = n leaves no free values, so completions and weight solvers
    /// degenerate to the known block itself.
    #[error("m = n leaves no free values; the instance is fully determined")]
    NoFreeValues,
}
