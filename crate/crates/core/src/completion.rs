//! Full assignments of all n values consistent with an instance's known
//! ratios.
//!
//! Working in mean-normalized units (A_n = 1 in arithmetic mode, G_n = 1
//! in geometric mode), a completion is the known block r_1..r_m followed
//! by n - m free positives constrained by a single condition: the free
//! block must sum to n - Σ r_k, or have log-sum -Σ ln r_k. Both
//! conditions admit exact projection, which is what the random generator
//! and the oracle rely on.

use rand::Rng;

use crate::error::BoundError;
use crate::instance::{Feasibility, KnownRatios, Mode};
use crate::mean::mean_ratio;

/// A length-n vector of positive values consistent with its source
/// instance, carrying its exact mean ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct Completion {
    values: Vec<f64>,
    ratio: f64,
    source: KnownRatios,
}

impl Completion {
    /// Wrap a full value vector, computing its mean ratio. Fails on
    /// nonpositive values; consistency with the source instance is the
    /// caller's responsibility and measurable via
    /// [`max_consistency_error`](Self::max_consistency_error).
    pub fn new(values: Vec<f64>, source: KnownRatios) -> Result<Self, BoundError> {
        let ratio = mean_ratio(&values)?;
        Ok(Self {
            values,
            ratio,
            source,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// G_n / A_n of the full vector.
    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn source(&self) -> &KnownRatios {
        &self.source
    }

    /// The unconstrained tail (values m+1..n).
    pub fn free_block(&self) -> &[f64] {
        &self.values[self.source.m()..]
    }

    /// Largest relative deviation of a_k / mean from r_k over the known
    /// block, with the mean recomputed from the values themselves.
    pub fn max_consistency_error(&self) -> f64 {
        let n = self.values.len() as f64;
        let mean = match self.source.mode {
            Mode::RelativeToAm => self.values.iter().sum::<f64>() / n,
            Mode::RelativeToGm => (self.values.iter().map(|v| v.ln()).sum::<f64>() / n).exp(),
        };
        self.source
            .ratios
            .iter()
            .zip(&self.values)
            .map(|(r, v)| (v / mean - r).abs() / r.abs())
            .fold(0.0, f64::max)
    }

    /// Coefficient of variation (std/mean) of the free block; zero when
    /// the free values are all equal.
    pub fn free_block_variation(&self) -> f64 {
        let block = self.free_block();
        if block.len() < 2 {
            return 0.0;
        }
        let mean = block.iter().sum::<f64>() / block.len() as f64;
        let var = block.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / block.len() as f64;
        var.sqrt() / mean
    }
}

fn strictly_feasible_with_free_values(instance: &KnownRatios) -> Result<(), BoundError> {
    match instance.ensure_feasible()? {
        Feasibility::Feasible => {}
        Feasibility::Degenerate => {
            return Err(BoundError::Infeasible(
                "degenerate instance: free values are pinned at zero".to_string(),
            ))
        }
    }
    if instance.m() == instance.n {
        return Err(BoundError::NoFreeValues);
    }
    Ok(())
}

/// The equality case of the arithmetic-mode bound: all free values equal
/// t = (n - Σ r_k)/(n - m), in units of A_n = 1. Its mean ratio attains
/// the closed form of [`crate::bounds::xia_bound_am`].
pub fn extremal_completion_am(instance: &KnownRatios) -> Result<Completion, BoundError> {
    instance.ensure_mode(Mode::RelativeToAm)?;
    strictly_feasible_with_free_values(instance)?;

    let t = (instance.n as f64 - instance.ratio_sum()) / instance.free_count() as f64;
    let mut values = instance.ratios.clone();
    values.resize(instance.n, t);
    Completion::new(values, instance.clone())
}

/// The equality case of the geometric-mode bound: all free values equal
/// t = (Π r_k)^(-1/(n-m)), in units of G_n = 1 (the full product is 1 by
/// construction). Its mean ratio attains the closed form of
/// [`crate::bounds::xia_bound_gm`].
pub fn extremal_completion_gm(instance: &KnownRatios) -> Result<Completion, BoundError> {
    instance.ensure_mode(Mode::RelativeToGm)?;
    strictly_feasible_with_free_values(instance)?;

    let t = (-instance.log_ratio_sum() / instance.free_count() as f64).exp();
    let mut values = instance.ratios.clone();
    values.resize(instance.n, t);
    Completion::new(values, instance.clone())
}

/// Draw a random completion on the instance's constraint surface: the
/// free block starts log-uniform in [-3, 3] and is projected exactly
/// onto its one-dimensional constraint (rescaled to the required sum in
/// arithmetic mode, log-shifted to the required product in geometric
/// mode).
pub fn random_completion<R: Rng + ?Sized>(
    instance: &KnownRatios,
    rng: &mut R,
) -> Result<Completion, BoundError> {
    strictly_feasible_with_free_values(instance)?;
    let draws: Vec<f64> = (0..instance.free_count())
        .map(|_| rng.random_range(-3.0..3.0f64).exp())
        .collect();
    completion_from_free_block(instance, draws)
}

/// Project an arbitrary positive free block onto the constraint surface
/// and assemble the completion. Used by the random generator and the
/// oracle's restart initialization.
pub(crate) fn completion_from_free_block(
    instance: &KnownRatios,
    mut free: Vec<f64>,
) -> Result<Completion, BoundError> {
    project_free_block(instance, &mut free);
    let mut values = instance.ratios.clone();
    values.extend_from_slice(&free);
    Completion::new(values, instance.clone())
}

/// Exact projection of the free block onto its constraint: multiply by
/// target_sum/current_sum (arithmetic mode) or shift all logs uniformly
/// (geometric mode).
pub(crate) fn project_free_block(instance: &KnownRatios, free: &mut [f64]) {
    match instance.mode {
        Mode::RelativeToAm => {
            let target = instance.n as f64 - instance.ratio_sum();
            let current: f64 = free.iter().sum();
            let scale = target / current;
            for v in free.iter_mut() {
                *v *= scale;
            }
        }
        Mode::RelativeToGm => {
            let target_log = -instance.log_ratio_sum();
            let current_log: f64 = free.iter().map(|v| v.ln()).sum();
            let shift = ((target_log - current_log) / free.len() as f64).exp();
            for v in free.iter_mut() {
                *v *= shift;
            }
        }
    }
}
