//! Independent constrained maximization of the mean ratio.
//!
//! The closed forms in [`crate::bounds`] claim to be the supremum of
//! G_n/A_n over all completions of an instance. This module searches for
//! that supremum directly — multi-restart coordinate ascent in the log
//! domain of the free block, with exact projection back onto the
//! one-dimensional constraint after every move — sharing no derivation
//! with the closed forms beyond [`crate::mean::mean_ratio`]. Agreement
//! certifies soundness and sharpness at once; disagreement would falsify
//! one side.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{dominance_margin, tung_bound_am, tung_bound_gm, xia_bound_am, xia_bound_gm};
use crate::completion::{completion_from_free_block, project_free_block, Completion};
use crate::error::BoundError;
use crate::instance::{Feasibility, KnownRatios, Mode};
use crate::mean::mean_ratio;
use crate::tolerances::SOUNDNESS_EXCESS_TOL;

/// Search budget and seeding for [`maximize_ratio`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    /// Independent ascent starts; restart 0 always begins at the
    /// equal-value completion (the conjectured maximizer — starting
    /// there makes the "do we escape?" probe meaningful), later ones at
    /// seeded log-uniform draws.
    pub restarts: usize,
    /// Sweep budget per restart.
    pub max_iterations: usize,
    /// Base seed; restart k uses an independent stream k of the same
    /// generator, so results do not depend on scheduling.
    pub seed: u64,
    /// Relative per-sweep improvement below which (twice in a row) a
    /// restart counts as converged.
    pub step_tolerance: f64,
    /// Worker threads for concurrent restarts; 0 picks the global
    /// default. The result is identical at every level.
    pub parallelism: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iterations: 10_000,
            seed: 0,
            step_tolerance: 1e-12,
            parallelism: 0,
        }
    }
}

/// Outcome of a maximization run.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Best mean ratio found across all restarts.
    pub max_ratio: f64,
    /// The completion realizing it.
    pub argmax: Completion,
    /// The closed-form bound the search is probing.
    pub closed_form_bound: f64,
    /// closed_form_bound - max_ratio; never below -1e-10.
    pub gap: f64,
    /// Total sweeps spent across restarts.
    pub iterations_used: usize,
    /// Whether every restart met the step tolerance within budget.
    pub converged: bool,
}

/// One coordinate-ascent run from a given starting free block.
#[derive(Debug, Clone)]
pub struct Ascent {
    /// Final (projected) completion.
    pub completion: Completion,
    /// Mean ratio after the initial projection and after each sweep.
    pub trace: Vec<f64>,
    pub sweeps: usize,
    pub converged: bool,
}

fn strictly_feasible_search_instance(instance: &KnownRatios) -> Result<(), BoundError> {
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

/// Coordinate ascent over the free block, starting from `free0`
/// (projected onto the constraint surface first).
///
/// Each coordinate move solves its one-dimensional subproblem exactly —
/// in arithmetic mode the log-product of the block is maximized at
/// x_i = target_sum/q, in geometric mode the block sum is minimized at
/// x_i scaled by ((Σ others)/((q-1)·x_i))^((q-1)/q) — while the rest of
/// the block absorbs the constraint uniformly, so every iterate is
/// exactly feasible and the ratio never decreases.
pub fn ascend(
    instance: &KnownRatios,
    free0: Vec<f64>,
    max_sweeps: usize,
    step_tolerance: f64,
) -> Result<Ascent, BoundError> {
    strictly_feasible_search_instance(instance)?;
    if free0.len() != instance.free_count() {
        return Err(BoundError::LambdaLength {
            expected: instance.free_count(),
            got: free0.len(),
        });
    }
    if free0.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(BoundError::NonPositiveValue);
    }

    let mut free = free0;
    project_free_block(instance, &mut free);
    let q = free.len();

    let mut values = instance.ratios.clone();
    values.extend_from_slice(&free);
    let eval = |values: &mut Vec<f64>, free: &[f64]| -> Result<f64, BoundError> {
        let m = instance.m();
        values[m..].copy_from_slice(free);
        mean_ratio(values)
    };

    let mut trace = vec![eval(&mut values, &free)?];
    // A single free value is fully determined by the constraint.
    if q == 1 {
        let completion = completion_from_free_block(instance, free)?;
        return Ok(Ascent {
            completion,
            trace,
            sweeps: 0,
            converged: true,
        });
    }

    let mut converged = false;
    let mut sweeps = 0;
    let mut quiet_sweeps = 0;
    for _ in 0..max_sweeps {
        sweeps += 1;
        match instance.mode {
            Mode::RelativeToAm => sweep_am(instance, &mut free),
            Mode::RelativeToGm => sweep_gm(&mut free),
        }
        project_free_block(instance, &mut free);

        let ratio = eval(&mut values, &free)?;
        let prev = *trace.last().expect("trace starts non-empty");
        trace.push(ratio);

        if (ratio - prev).abs() <= step_tolerance * ratio.abs().max(f64::MIN_POSITIVE) {
            quiet_sweeps += 1;
            if quiet_sweeps >= 2 {
                converged = true;
                break;
            }
        } else {
            quiet_sweeps = 0;
        }
    }

    let completion = completion_from_free_block(instance, free)?;
    Ok(Ascent {
        completion,
        trace,
        sweeps,
        converged,
    })
}

/// One arithmetic-mode sweep: the block keeps its exact sum while each
/// coordinate in turn takes its line-search optimum target/q. The
/// rescaling of "all other" coordinates is tracked lazily in a shared
/// multiplier so a sweep is O(q).
fn sweep_am(instance: &KnownRatios, free: &mut [f64]) {
    let q = free.len() as f64;
    let target = instance.n as f64 - instance.ratio_sum();
    let best = target / q;
    let mut mult = 1.0f64;
    let mut sum: f64 = free.iter().sum();
    for v in free.iter_mut() {
        let x = mult * *v;
        let rest = sum - x;
        mult *= (target - best) / rest;
        *v = best / mult;
        sum = target;
    }
    for v in free.iter_mut() {
        *v *= mult;
    }
}

/// One geometric-mode sweep: the block keeps its exact log-sum while
/// each coordinate takes its line-search optimum (minimizing the block
/// sum), the rest shifting uniformly in the log domain.
fn sweep_gm(free: &mut [f64]) {
    let k = (free.len() - 1) as f64;
    let mut mult = 1.0f64;
    let mut sum: f64 = free.iter().sum();
    for v in free.iter_mut() {
        let x = mult * *v;
        let rest = sum - x;
        let u = (rest / (k * x)).powf(k / (k + 1.0));
        let x_new = x * u;
        let scale = u.powf(-1.0 / k);
        mult *= scale;
        *v = x_new / mult;
        sum = x_new + rest * scale;
    }
    for v in free.iter_mut() {
        *v *= mult;
    }
}

/// Search for the supremum of the mean ratio over all completions of a
/// strictly feasible instance with free values.
///
/// Deterministic for a fixed seed at any parallelism level: restart k
/// draws from stream k of the seeded generator and results are reduced
/// in restart order (ties keep the earliest restart). Panics if the
/// config violates its invariants (restarts and max_iterations at
/// least 1, positive step_tolerance).
pub fn maximize_ratio(
    instance: &KnownRatios,
    config: &OracleConfig,
) -> Result<OracleResult, BoundError> {
    assert!(config.restarts >= 1, "restarts must be at least 1");
    assert!(config.max_iterations >= 1, "max_iterations must be at least 1");
    assert!(config.step_tolerance > 0.0, "step_tolerance must be positive");

    strictly_feasible_search_instance(instance)?;
    let closed_form_bound = match instance.mode {
        Mode::RelativeToAm => xia_bound_am(instance)?.value,
        Mode::RelativeToGm => xia_bound_gm(instance)?.value,
    };

    let run = |restart: usize| -> Result<Ascent, BoundError> {
        let free0 = starting_block(instance, config.seed, restart);
        ascend(instance, free0, config.max_iterations, config.step_tolerance)
    };

    let runs: Vec<Ascent> = if config.parallelism == 1 {
        (0..config.restarts).map(run).collect::<Result<_, _>>()?
    } else {
        let execute = || {
            use rayon::prelude::*;
            (0..config.restarts)
                .into_par_iter()
                .map(run)
                .collect::<Result<Vec<_>, _>>()
        };
        if config.parallelism == 0 {
            execute()?
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(config.parallelism)
                .build()
                .expect("thread pool construction");
            pool.install(execute)?
        }
    };

    let iterations_used = runs.iter().map(|a| a.sweeps).sum();
    let converged = runs.iter().all(|a| a.converged);
    let best = runs
        .into_iter()
        .reduce(|best, next| {
            if next.completion.ratio() > best.completion.ratio() {
                next
            } else {
                best
            }
        })
        .expect("at least one restart");

    let max_ratio = best.completion.ratio();
    Ok(OracleResult {
        max_ratio,
        argmax: best.completion,
        closed_form_bound,
        gap: closed_form_bound - max_ratio,
        iterations_used,
        converged,
    })
}

fn starting_block(instance: &KnownRatios, seed: u64, restart: usize) -> Vec<f64> {
    let q = instance.free_count();
    if restart == 0 {
        let t = match instance.mode {
            Mode::RelativeToAm => (instance.n as f64 - instance.ratio_sum()) / q as f64,
            Mode::RelativeToGm => (-instance.log_ratio_sum() / q as f64).exp(),
        };
        return vec![t; q];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    (0..q).map(|_| rng.random_range(-3.0..3.0f64).exp()).collect()
}

/// Result of a randomized falsification pass over the constraint
/// surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SoundnessReport {
    pub samples: usize,
    /// Completions whose ratio exceeded the bound by more than the
    /// soundness tolerance. Anything above zero falsifies the bound.
    pub violations: usize,
    /// Largest ratio observed.
    pub worst_ratio: f64,
    /// The closed-form bound tested against.
    pub bound: f64,
}

impl SoundnessReport {
    /// Slack between the bound and the worst completion found.
    pub fn worst_gap(&self) -> f64 {
        self.bound - self.worst_ratio
    }
}

/// Draw `samples` random completions of the instance and count how many
/// exceed the closed-form bound by more than 1e-12.
pub fn soundness_sweep(
    instance: &KnownRatios,
    samples: usize,
    seed: u64,
) -> Result<SoundnessReport, BoundError> {
    strictly_feasible_search_instance(instance)?;
    let bound = match instance.mode {
        Mode::RelativeToAm => xia_bound_am(instance)?.value,
        Mode::RelativeToGm => xia_bound_gm(instance)?.value,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut worst_ratio = 0.0f64;
    for _ in 0..samples {
        let completion = crate::completion::random_completion(instance, &mut rng)?;
        let ratio = completion.ratio();
        if ratio > bound + SOUNDNESS_EXCESS_TOL {
            violations += 1;
        }
        worst_ratio = worst_ratio.max(ratio);
    }

    Ok(SoundnessReport {
        samples,
        violations,
        worst_ratio,
        bound,
    })
}

/// One r2 grid point of a refined-vs-classical comparison sweep.
///
/// Out-of-domain points carry NaN values and `domain_ok = false` instead
/// of failing the whole sweep. The margin comes from
/// [`crate::bounds::dominance_margin`], so its sign stays meaningful at
/// near-tangency points where direct subtraction of the two reported
/// bounds would cancel to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DominancePoint {
    pub r2: f64,
    pub xia: f64,
    pub tung: f64,
    pub margin: f64,
    pub domain_ok: bool,
}

/// Evaluate both two-ratio bounds over an r2 grid at fixed r1.
pub fn dominance_grid(n: usize, mode: Mode, r1: f64, r2_grid: &[f64]) -> Vec<DominancePoint> {
    r2_grid
        .iter()
        .map(|&r2| match dominance_point(n, mode, r1, r2) {
            Ok((xia, tung, margin)) => DominancePoint {
                r2,
                xia,
                tung,
                margin,
                domain_ok: true,
            },
            Err(_) => DominancePoint {
                r2,
                xia: f64::NAN,
                tung: f64::NAN,
                margin: f64::NAN,
                domain_ok: false,
            },
        })
        .collect()
}

fn dominance_point(n: usize, mode: Mode, r1: f64, r2: f64) -> Result<(f64, f64, f64), BoundError> {
    let instance = KnownRatios::new(n, mode, vec![r1, r2]);
    let (tung, xia) = match mode {
        Mode::RelativeToAm => (
            tung_bound_am(n, r1, r2)?.value,
            xia_bound_am(&instance)?.value,
        ),
        Mode::RelativeToGm => (
            tung_bound_gm(n, r1, r2)?.value,
            xia_bound_gm(&instance)?.value,
        ),
    };
    let margin = dominance_margin(n, mode, r1, r2)?;
    Ok((xia, tung, margin))
}
