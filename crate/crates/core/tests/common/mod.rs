//! Shared generators for the integration and acceptance suites.
#![allow(dead_code)] // each test target uses a subset

use meanbound::{KnownRatios, Mode};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// One random feasible instance with free values: n in 2..=12, m in
/// 1..n, both modes, ratios log-uniform in [e^-2, e^2]; arithmetic-mode
/// ratio sums are projected under 0.9·n to stay strictly feasible.
pub fn random_instance(rng: &mut ChaCha8Rng) -> KnownRatios {
    let n = rng.random_range(2usize..=12);
    let m = rng.random_range(1..n);
    let mode = if rng.random_bool(0.5) {
        Mode::RelativeToAm
    } else {
        Mode::RelativeToGm
    };
    let mut ratios: Vec<f64> = (0..m).map(|_| rng.random_range(-2.0..2.0f64).exp()).collect();
    if mode == Mode::RelativeToAm {
        let sum: f64 = ratios.iter().sum();
        let cap = 0.9 * n as f64;
        if sum > cap {
            let scale = cap / sum;
            for r in &mut ratios {
                *r *= scale;
            }
        }
    }
    KnownRatios::new(n, mode, ratios)
}

/// Deterministic instance family shared across criteria.
pub fn instance_family(seed: u64, count: usize) -> Vec<KnownRatios> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng)).collect()
}
