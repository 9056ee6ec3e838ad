//! Problem instances: n positive numbers of which m are known as
//! multiples of either the arithmetic or the geometric mean.

use std::fmt;

use crate::error::BoundError;
use crate::tolerances::FEASIBILITY_REL_TOL;

/// Which mean the known ratios are expressed against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Known values are a_k = A_n * r_k.
    RelativeToAm,
    /// Known values are a_k = G_n * r_k.
    RelativeToGm,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::RelativeToAm => write!(f, "am"),
            Mode::RelativeToGm => write!(f, "gm"),
        }
    }
}

/// Feasibility grade of an accepted instance.
///
/// `Degenerate` marks arithmetic-mode instances whose ratio sum sits at n
/// within the feasibility tolerance: they are accepted, but the n - m
/// free values are pinned at zero in the limit and the bound collapses
/// accordingly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Degenerate,
}

/// Outcome of validating an instance: accepted (with a feasibility
/// grade) or rejected with the first violated invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Ok(Feasibility),
    Violation(String),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok(_))
    }
}

/// A problem instance: the count n, the reference mean, and the m known
/// ratios r_1..r_m.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownRatios {
    pub n: usize,
    pub mode: Mode,
    pub ratios: Vec<f64>,
}

impl KnownRatios {
    pub fn new(n: usize, mode: Mode, ratios: Vec<f64>) -> Self {
        Self { n, mode, ratios }
    }

    /// Number of known ratios.
    pub fn m(&self) -> usize {
        self.ratios.len()
    }

    /// Number of free (unknown) values; zero when m >= n.
    pub fn free_count(&self) -> usize {
        self.n.saturating_sub(self.m())
    }

    /// Sum of the ratios, reduced in a canonical (sorted) order so the
    /// result is exactly invariant under permutation of the list.
    pub fn ratio_sum(&self) -> f64 {
        sorted_sum(self.ratios.iter().copied())
    }

    /// Sum of ln(r_k), reduced in canonical order. This is the log of
    /// the ratio product; products are never formed directly so extreme
    /// ratios cannot overflow or underflow.
    pub fn log_ratio_sum(&self) -> f64 {
        sorted_sum(self.ratios.iter().map(|r| r.ln()))
    }

    /// Check every instance invariant with the default feasibility
    /// tolerance, reporting the first violation.
    pub fn validate(&self) -> Verdict {
        self.validate_with(FEASIBILITY_REL_TOL)
    }

    /// Same as [`validate`](Self::validate) with an explicit relative
    /// feasibility tolerance.
    pub fn validate_with(&self, feasibility_rel_tol: f64) -> Verdict {
        if self.n == 0 {
            return Verdict::Violation("n must be at least 1".to_string());
        }
        if self.ratios.is_empty() {
            return Verdict::Violation("at least one known ratio is required".to_string());
        }
        if self.m() > self.n {
            return Verdict::Violation("more known ratios than numbers (m > n)".to_string());
        }
        if self.ratios.iter().any(|r| !r.is_finite() || *r <= 0.0) {
            return Verdict::Violation("every ratio must be positive and finite".to_string());
        }

        let n = self.n as f64;
        match (self.mode, self.m() == self.n) {
            (Mode::RelativeToAm, false) => {
                // The free values must stay positive: sum(r) < n strictly.
                // Equality within tolerance is accepted but degenerate.
                let slack = n - self.ratio_sum();
                if slack > feasibility_rel_tol * n {
                    Verdict::Ok(Feasibility::Feasible)
                } else if slack >= -feasibility_rel_tol * n {
                    Verdict::Ok(Feasibility::Degenerate)
                } else {
                    Verdict::Violation("sum of ratios ≥ n".to_string())
                }
            }
            (Mode::RelativeToAm, true) => {
                if (self.ratio_sum() - n).abs() <= feasibility_rel_tol * n {
                    Verdict::Ok(Feasibility::Feasible)
                } else {
                    Verdict::Violation("sum of ratios ≠ n with m = n".to_string())
                }
            }
            (Mode::RelativeToGm, true) => {
                if self.log_ratio_sum().abs() <= feasibility_rel_tol * n {
                    Verdict::Ok(Feasibility::Feasible)
                } else {
                    Verdict::Violation("product of ratios ≠ 1 with m = n".to_string())
                }
            }
            // Any positive ratios are realizable against the geometric
            // mean when free values remain.
            (Mode::RelativeToGm, false) => Verdict::Ok(Feasibility::Feasible),
        }
    }

    /// Validate and convert a violation into an error.
    pub fn ensure_feasible(&self) -> Result<Feasibility, BoundError> {
        match self.validate() {
            Verdict::Ok(grade) => Ok(grade),
            Verdict::Violation(why) => Err(BoundError::Infeasible(why)),
        }
    }

    pub(crate) fn ensure_mode(&self, expected: Mode) -> Result<(), BoundError> {
        if self.mode == expected {
            Ok(())
        } else {
            Err(BoundError::ModeMismatch {
                expected,
                actual: self.mode,
            })
        }
    }
}

/// Sum in ascending order (total order over f64), so that any
/// permutation of the input reduces to the identical float.
fn sorted_sum<I: Iterator<Item = f64>>(values: I) -> f64 {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.iter().sum()
}
