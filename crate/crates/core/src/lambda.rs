//! The weighted bound family and its closed-form optimal weights.
//!
//! Attaching a positive weight lambda_k to each known value and applying
//! the mean inequality to the reweighted sample yields, for every
//! positive weight vector, an upper bound on G_n/A_n. The two closed
//! forms in [`crate::bounds`] are the minima of these families; the
//! functions here expose the families themselves so that optimality is
//! checkable rather than assumed.

use crate::error::BoundError;
use crate::instance::{KnownRatios, Mode};
use crate::tolerances::FD_RELATIVE_STEP;

/// An ordered vector of m positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaVector(Vec<f64>);

impl LambdaVector {
    /// Build a weight vector, rejecting nonpositive or non-finite
    /// entries.
    pub fn new(lambdas: Vec<f64>) -> Result<Self, BoundError> {
        if lambdas.iter().any(|l| !l.is_finite() || *l <= 0.0) {
            return Err(BoundError::NonPositiveLambda);
        }
        Ok(Self(lambdas))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn log_sum(&self) -> f64 {
        self.0.iter().map(|l| l.ln()).sum()
    }

    fn check_len(&self, m: usize) -> Result<(), BoundError> {
        if self.len() == m {
            Ok(())
        } else {
            Err(BoundError::LambdaLength {
                expected: m,
                got: self.len(),
            })
        }
    }
}

fn require_free_values(instance: &KnownRatios) -> Result<(), BoundError> {
    if instance.m() < instance.n {
        Ok(())
    } else {
        Err(BoundError::NoFreeValues)
    }
}

/// Weighted upper bound for arithmetic-mode instances:
///
/// ```text
/// f(λ) = (1/n) Σ λ_k^(n-m) r_k + (1/Π λ_k) · (n - Σ r_k)/n
/// ```
///
/// Every positive λ yields a valid bound; the minimum over λ is the
/// closed form of [`crate::bounds::xia_bound_am`], attained at
/// [`optimal_lambdas_am`]. Terms are combined by log-sum-exp with one
/// final exponentiation.
pub fn objective_f(instance: &KnownRatios, lambdas: &LambdaVector) -> Result<f64, BoundError> {
    instance.ensure_mode(Mode::RelativeToAm)?;
    instance.ensure_feasible()?;
    require_free_values(instance)?;
    lambdas.check_len(instance.m())?;

    let n = instance.n as f64;
    let free = instance.free_count() as f64;
    let slack = (n - instance.ratio_sum()).max(0.0);

    let mut log_terms: Vec<f64> = instance
        .ratios
        .iter()
        .zip(lambdas.as_slice())
        .map(|(r, l)| free * l.ln() + r.ln() - n.ln())
        .collect();
    log_terms.push(slack.ln() - lambdas.log_sum() - n.ln());

    Ok(log_sum_exp(&log_terms).exp())
}

/// Weighted upper bound for geometric-mode instances:
///
/// ```text
/// g(λ) = 1 / (Π λ_k · (1 - (1/n) Σ r_k λ_k^(n-m)) + (1/n) Σ r_k)
/// ```
///
/// The expression is an upper bound only while the denominator stays
/// positive; outside that region the call fails with
/// [`BoundError::LambdaOutsideValidRegion`] rather than returning a
/// meaningless negative value. The minimum over the valid region is the
/// closed form of [`crate::bounds::xia_bound_gm`], attained at
/// [`optimal_lambdas_gm`].
pub fn objective_g(instance: &KnownRatios, lambdas: &LambdaVector) -> Result<f64, BoundError> {
    instance.ensure_mode(Mode::RelativeToGm)?;
    instance.ensure_feasible()?;
    require_free_values(instance)?;
    lambdas.check_len(instance.m())?;

    let n = instance.n as f64;
    let free = instance.free_count() as f64;

    let weighted_sum: f64 = instance
        .ratios
        .iter()
        .zip(lambdas.as_slice())
        .map(|(r, l)| (free * l.ln() + r.ln()).exp())
        .sum();
    let lambda_product = lambdas.log_sum().exp();

    let denom = lambda_product * (1.0 - weighted_sum / n) + instance.ratio_sum() / n;
    // Non-finite intermediates (inf * 0 from extreme weights) also land
    // outside the valid region.
    if denom.is_nan() || denom <= 0.0 {
        return Err(BoundError::LambdaOutsideValidRegion);
    }
    Ok(1.0 / denom)
}

/// The stationary point of [`objective_f`]:
///
/// ```text
/// λ_i = ((n - Σ r_k)/(n - m) · (Π r_k)^(1/(n-m)))^(1/n) · r_i^(-1/(n-m))
/// ```
///
/// Requires free values (m < n) and strict feasibility; at the
/// degenerate boundary the slack is zero and no positive stationary
/// weights exist.
pub fn optimal_lambdas_am(instance: &KnownRatios) -> Result<LambdaVector, BoundError> {
    instance.ensure_mode(Mode::RelativeToAm)?;
    instance.ensure_feasible()?;
    require_free_values(instance)?;

    let n = instance.n as f64;
    let free = instance.free_count() as f64;
    let slack = n - instance.ratio_sum();
    if slack <= 0.0 {
        return Err(BoundError::Infeasible(
            "degenerate instance: zero slack leaves no positive weights".to_string(),
        ));
    }

    let log_scale = ((slack / free).ln() + instance.log_ratio_sum() / free) / n;
    let lambdas = instance
        .ratios
        .iter()
        .map(|r| (log_scale - r.ln() / free).exp())
        .collect();
    LambdaVector::new(lambdas)
}

/// The stationary point of [`objective_g`]: `λ_i = r_i^(-1/(n-m))`.
pub fn optimal_lambdas_gm(instance: &KnownRatios) -> Result<LambdaVector, BoundError> {
    instance.ensure_mode(Mode::RelativeToGm)?;
    instance.ensure_feasible()?;
    require_free_values(instance)?;

    let free = instance.free_count() as f64;
    let lambdas = instance
        .ratios
        .iter()
        .map(|r| (-r.ln() / free).exp())
        .collect();
    LambdaVector::new(lambdas)
}

/// Central finite-difference gradient of a scalar function of the
/// weights, with a relative step per coordinate. Used to check
/// stationarity of the objectives at their closed-form optima.
pub fn finite_difference_gradient<F>(at: &LambdaVector, f: F) -> Result<Vec<f64>, BoundError>
where
    F: Fn(&LambdaVector) -> Result<f64, BoundError>,
{
    let mut grad = Vec::with_capacity(at.len());
    for i in 0..at.len() {
        let h = FD_RELATIVE_STEP * at.as_slice()[i];
        let mut plus = at.as_slice().to_vec();
        plus[i] += h;
        let mut minus = at.as_slice().to_vec();
        minus[i] -= h;
        let f_plus = f(&LambdaVector::new(plus)?)?;
        let f_minus = f(&LambdaVector::new(minus)?)?;
        grad.push((f_plus - f_minus) / (2.0 * h));
    }
    Ok(grad)
}

fn log_sum_exp(logs: &[f64]) -> f64 {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln()
}
