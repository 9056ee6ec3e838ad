//! The quantity everything else bounds: the ratio of geometric to
//! arithmetic mean of a positive sample.

use crate::error::BoundError;

/// Compute G_n / A_n for a sample of positive values.
///
/// Both means are formed in the log domain: the geometric mean as the
/// average of logs, the arithmetic mean through a log-sum-exp anchored at
/// the largest log. Samples with values near 1e300 or 1e-300 therefore
/// evaluate without overflow or underflow, and rescaling the whole
/// sample cancels exactly up to rounding.
///
/// The result is in (0, 1]; it equals 1 exactly when all values are
/// equal (classical mean inequality).
pub fn mean_ratio(values: &[f64]) -> Result<f64, BoundError> {
    if values.is_empty() {
        return Err(BoundError::EmptyInput);
    }
    if values.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(BoundError::NonPositiveValue);
    }

    let n = values.len() as f64;
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let max_log = max.ln();

    // Anchor both means at the largest value. Log deviations come from
    // the quotient v/max, whose rounding is relative, so rescaling the
    // whole sample cancels to a few ulps and an all-equal sample reduces
    // to exactly 1 at any magnitude. Quotients that underflow (spread
    // beyond ~1e308) fall back to differencing the logs.
    let quotients: Vec<f64> = values.iter().map(|v| v / max).collect();
    let log_devs: Vec<f64> = values
        .iter()
        .zip(&quotients)
        .map(|(v, t)| {
            if *t >= f64::MIN_POSITIVE {
                t.ln()
            } else {
                v.ln() - max_log
            }
        })
        .collect();

    let log_gm = log_devs.iter().sum::<f64>() / n;
    let log_am = (quotients.iter().sum::<f64>() / n).ln();

    Ok((log_gm - log_am).exp())
}
