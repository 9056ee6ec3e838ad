//! Closed-form upper bounds on G_n/A_n under partial information, and
//! the classical two-ratio bounds they refine.
//!
//! All products and fractional powers are evaluated as sums of
//! logarithms with a single final exponentiation, so extreme ratio
//! magnitudes and large n stay inside f64 range.

use crate::error::BoundError;
use crate::instance::{Feasibility, KnownRatios, Mode};
use crate::lambda::{optimal_lambdas_am, LambdaVector};

/// Which closed form produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    /// Refined bound from ratios known against the arithmetic mean.
    Xia1,
    /// Refined bound from ratios known against the geometric mean.
    Xia2,
    /// Classical two-ratio bound, arithmetic reference.
    Tung1,
    /// Classical two-ratio bound, geometric reference.
    Tung2,
    /// Classical lower bound on the gap A_n - G_n.
    TungGap,
    /// Weighted objective for the arithmetic reference.
    ObjectiveF,
    /// Weighted objective for the geometric reference.
    ObjectiveG,
}

/// A computed bound together with enough provenance to re-check it: the
/// formula, the instance it was evaluated on, the feasibility grade, and
/// the weight vector realizing it (when one exists).
///
/// For the ratio formulas `value` is an upper bound on G_n/A_n in
/// (0, 1]; for [`Formula::TungGap`] it is a lower bound on A_n - G_n in
/// the units of the inputs, and `instance.ratios` holds the two extremes
/// rather than mean-relative ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub value: f64,
    pub formula: Formula,
    pub feasibility: Feasibility,
    pub lambdas_used: Option<LambdaVector>,
    pub instance: KnownRatios,
}

/// Refined upper bound on G_n/A_n when a_k = A_n r_k is known for
/// k = 1..m:
///
/// ```text
/// ((n - Σ r_k) / (n - m))^(1 - m/n) · (Π r_k)^(1/n)
/// ```
///
/// For m = n the first factor degenerates (exponent zero) and the ratio
/// is fully determined: the bound is (Π r_k)^(1/n) exactly. Degenerate
/// instances (ratio sum at n within tolerance) evaluate to 0 with the
/// report flagged accordingly; there the free values are pinned at zero
/// and no positive completion exists except in the limit.
pub fn xia_bound_am(instance: &KnownRatios) -> Result<BoundReport, BoundError> {
    instance.ensure_mode(Mode::RelativeToAm)?;
    let grade = instance.ensure_feasible()?;

    let n = instance.n as f64;
    let m = instance.m() as f64;
    let log_mean = instance.log_ratio_sum() / n;

    let value = if instance.m() == instance.n {
        log_mean.exp()
    } else {
        let slack = (n - instance.ratio_sum()).max(0.0);
        let log_first = (1.0 - m / n) * (slack / (n - m)).ln();
        (log_first + log_mean).exp()
    };

    let lambdas_used = if instance.m() < instance.n && grade == Feasibility::Feasible {
        Some(optimal_lambdas_am(instance)?)
    } else {
        None
    };

    Ok(BoundReport {
        value,
        formula: Formula::Xia1,
        feasibility: grade,
        lambdas_used,
        instance: instance.clone(),
    })
}

/// Refined upper bound on G_n/A_n when a_k = G_n r_k is known for
/// k = 1..m:
///
/// ```text
/// 1 / ((1 - m/n) · (Π r_k)^(-1/(n-m)) + (1/n) Σ r_k)
/// ```
///
/// For m = n the first denominator term vanishes and the bound is
/// n / Σ r_k (the ratio is fully determined, the product constraint
/// having fixed G_n).
pub fn xia_bound_gm(instance: &KnownRatios) -> Result<BoundReport, BoundError> {
    instance.ensure_mode(Mode::RelativeToGm)?;
    let grade = instance.ensure_feasible()?;

    let n = instance.n as f64;
    let m = instance.m() as f64;

    let value = if instance.m() == instance.n {
        n / instance.ratio_sum()
    } else {
        let root = (-instance.log_ratio_sum() / (n - m)).exp();
        1.0 / ((1.0 - m / n) * root + instance.ratio_sum() / n)
    };

    let lambdas_used = if instance.m() < instance.n {
        Some(crate::lambda::optimal_lambdas_gm(instance)?)
    } else {
        None
    };

    Ok(BoundReport {
        value,
        formula: Formula::Xia2,
        feasibility: grade,
        lambdas_used,
        instance: instance.clone(),
    })
}

fn tung_domain_am(n: f64, r1: f64, r2: f64) -> Result<(), BoundError> {
    if !r2.is_finite() || r2 <= 0.0 {
        return Err(BoundError::TungDomain("0 < r2"));
    }
    if r2 > 1.0 {
        return Err(BoundError::TungDomain("r2 ≤ 1"));
    }
    if !r1.is_finite() || r1 < 1.0 {
        return Err(BoundError::TungDomain("1 ≤ r1"));
    }
    if r1 > n - r2 {
        return Err(BoundError::TungDomain("r1 ≤ n − r2"));
    }
    Ok(())
}

fn tung_domain_gm(r1: f64, r2: f64) -> Result<(), BoundError> {
    if !r2.is_finite() || r2 <= 0.0 {
        return Err(BoundError::TungDomain("0 < r2"));
    }
    if r2 > 1.0 {
        return Err(BoundError::TungDomain("r2 ≤ 1"));
    }
    if !r1.is_finite() || r1 < 1.0 {
        return Err(BoundError::TungDomain("1 ≤ r1"));
    }
    Ok(())
}

/// Classical upper bound on G_n/A_n from the largest value A_n·r1 and
/// smallest value A_n·r2: `1 - (√r1 - √r2)²/n`, valid for
/// 0 < r2 ≤ 1 ≤ r1 ≤ n − r2.
pub fn tung_bound_am(n: usize, r1: f64, r2: f64) -> Result<BoundReport, BoundError> {
    tung_domain_am(n as f64, r1, r2)?;
    let d = r1.sqrt() - r2.sqrt();
    Ok(BoundReport {
        value: 1.0 - d * d / n as f64,
        formula: Formula::Tung1,
        feasibility: Feasibility::Feasible,
        lambdas_used: None,
        instance: KnownRatios::new(n, Mode::RelativeToAm, vec![r1, r2]),
    })
}

/// Classical upper bound on G_n/A_n from the largest value G_n·r1 and
/// smallest value G_n·r2: `1 / (1 + (√r1 - √r2)²/n)`, valid for
/// 0 < r2 ≤ 1 ≤ r1.
pub fn tung_bound_gm(n: usize, r1: f64, r2: f64) -> Result<BoundReport, BoundError> {
    tung_domain_gm(r1, r2)?;
    let d = r1.sqrt() - r2.sqrt();
    Ok(BoundReport {
        value: 1.0 / (1.0 + d * d / n as f64),
        formula: Formula::Tung2,
        feasibility: Feasibility::Feasible,
        lambdas_used: None,
        instance: KnownRatios::new(n, Mode::RelativeToGm, vec![r1, r2]),
    })
}

/// Classical lower bound on the gap A_n - G_n from the largest and
/// smallest values: `(√largest - √smallest)²/n`. The report's instance
/// records the two extremes in input units.
pub fn tung_gap(n: usize, largest: f64, smallest: f64) -> Result<BoundReport, BoundError> {
    if n == 0 {
        return Err(BoundError::TungDomain("n ≥ 1"));
    }
    if !largest.is_finite() || !smallest.is_finite() || largest <= 0.0 || smallest <= 0.0 {
        return Err(BoundError::NonPositiveValue);
    }
    if smallest > largest {
        return Err(BoundError::DisorderedExtremes);
    }
    let d = largest.sqrt() - smallest.sqrt();
    Ok(BoundReport {
        value: d * d / n as f64,
        formula: Formula::TungGap,
        feasibility: Feasibility::Feasible,
        lambdas_used: None,
        instance: KnownRatios::new(n, Mode::RelativeToAm, vec![largest, smallest]),
    })
}

/// The dominance margin `tung - xia` for a two-ratio instance, evaluated
/// so that its sign is meaningful even where the two bounds nearly or
/// exactly coincide.
///
/// In geometric mode the two bounds are tangent along r1·r2 = 1; near
/// that curve the naive f64 subtraction cancels completely while the
/// true margin is of order (ln r1·r2)². The geometric branch therefore
/// combines the denominators analytically: with w = ln(r1·r2),
///
/// ```text
/// Dx - Dt = (1 - 2/n)·e^(-w/(n-2)) + (2/n)·e^(w/2) - 1
/// ```
///
/// which is computed by series for small |w| (w itself recovered through
/// an exact-product tail), and margin = (Dx - Dt)/(Dt·Dx). The result
/// can differ from the f64 subtraction of the two reported bounds in
/// their last ulps; it is the more accurate estimate of the real-valued
/// margin. Arithmetic mode has no tangency away from r1 = r2 = 1 and
/// uses the direct difference.
///
/// Requires n ≥ 3 (two known ratios must leave a free value) and the
/// mode's two-ratio domain.
pub fn dominance_margin(n: usize, mode: Mode, r1: f64, r2: f64) -> Result<f64, BoundError> {
    if n < 3 {
        return Err(BoundError::NoFreeValues);
    }
    match mode {
        Mode::RelativeToAm => {
            let tung = tung_bound_am(n, r1, r2)?.value;
            let instance = KnownRatios::new(n, Mode::RelativeToAm, vec![r1, r2]);
            let xia = xia_bound_am(&instance)?.value;
            Ok(tung - xia)
        }
        Mode::RelativeToGm => {
            tung_domain_gm(r1, r2)?;
            let nf = n as f64;
            let w = accurate_log_product(r1, r2);
            let a = 1.0 - 2.0 / nf;
            let b = 2.0 / nf;
            let q = nf - 2.0;

            let diff = if w.abs() <= 1e-3 {
                // Dx - Dt vanishes to second order at w = 0; sum the
                // series from the quadratic term up.
                let mut acc = 0.0;
                let mut w_pow = w * w;
                let mut factorial = 2.0;
                for k in 2..=6u32 {
                    let coeff = a * (-1.0 / q).powi(k as i32) + b * 0.5f64.powi(k as i32);
                    acc += w_pow / factorial * coeff;
                    w_pow *= w;
                    factorial *= (k + 1) as f64;
                }
                acc
            } else {
                a * (-w / q).exp() + b * (w / 2.0).exp() - 1.0
            };

            let dt = 1.0 + (r1.sqrt() - r2.sqrt()).powi(2) / nf;
            let dx = a * (-w / q).exp() + (r1 + r2) / nf;
            Ok(diff / (dt * dx))
        }
    }
}

/// ln(r1·r2) with the product's rounding error folded back in, so the
/// result keeps absolute accuracy ~1e-33 near r1·r2 = 1 where the plain
/// `ln(r1 * r2)` loses every significant digit.
fn accurate_log_product(r1: f64, r2: f64) -> f64 {
    let p_hi = r1 * r2;
    let p_lo = r1.mul_add(r2, -p_hi); // exact tail of the product
    p_hi.ln() + (p_lo / p_hi).ln_1p()
}
