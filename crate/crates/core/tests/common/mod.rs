//! Seeded random instances shared by the property and acceptance suites.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stratalloc::{LowerProblem, MinCostProblem, StrataFrame, Subset, UpperProblem};

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform over `[lo, hi]`.
pub fn log_uniform(rng: &mut TestRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..=hi.ln()).exp()
}

pub fn params(rng: &mut TestRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| log_uniform(rng, 1e-3, 1e3)).collect()
}

/// Budget multiplier `1 + u`, with `u = 0` on roughly one draw in ten.
pub fn budget_stretch(rng: &mut TestRng) -> f64 {
    if rng.random_bool(0.1) {
        1.0
    } else {
        1.0 + rng.random_range(0.0..=10.0)
    }
}

pub fn lower_with(rng: &mut TestRng, n: usize, stretch: f64) -> LowerProblem {
    let frame = StrataFrame::numbered(params(rng, n), params(rng, n))
        .unwrap()
        .with_lower(params(rng, n))
        .unwrap();
    let floor = LowerProblem::new(frame.clone(), f64::MAX)
        .unwrap()
        .min_budget();
    LowerProblem::new(frame, floor * stretch).unwrap()
}

pub fn random_lower(rng: &mut TestRng, max_strata: usize) -> LowerProblem {
    let n = rng.random_range(1..=max_strata);
    let stretch = budget_stretch(rng);
    lower_with(rng, n, stretch)
}

pub fn random_min_cost(rng: &mut TestRng, max_strata: usize) -> MinCostProblem {
    let n = rng.random_range(1..=max_strata);
    let a = params(rng, n);
    let cap = params(rng, n);
    let frame = StrataFrame::numbered(a.clone(), params(rng, n))
        .unwrap()
        .with_upper(cap.clone())
        .unwrap();
    let spread: f64 = a.iter().zip(&cap).map(|(a, m)| a * a / m).sum();
    let a0 = spread * rng.random_range(-0.5..0.9);
    let c0 = rng.random_range(0.0..100.0);
    let floor = MinCostProblem::new(frame.clone(), f64::MAX, a0, c0)
        .unwrap()
        .variance_floor();
    let v = floor * budget_stretch(rng);
    MinCostProblem::new(frame, v, a0, c0).unwrap()
}

pub fn random_upper(rng: &mut TestRng, max_strata: usize) -> UpperProblem {
    let n = rng.random_range(1..=max_strata);
    let frame = StrataFrame::numbered(params(rng, n), vec![1.0; n])
        .unwrap()
        .with_upper(params(rng, n))
        .unwrap();
    let capacity = UpperProblem::new(frame.clone(), 1e-300).unwrap().capacity();
    let n_total = if rng.random_bool(0.1) {
        capacity
    } else {
        capacity * rng.random_range(0.01..1.0)
    };
    UpperProblem::new(frame, n_total).unwrap()
}

/// Random subset of `0..universe`, optionally kept proper.
pub fn random_subset(rng: &mut TestRng, universe: usize, proper: bool) -> Subset {
    loop {
        let set = Subset::from_indices(universe, (0..universe).filter(|_| rng.random_bool(0.5)));
        if !(proper && set.is_full()) {
            return set;
        }
    }
}

pub fn rel_dev(x: f64, y: f64) -> f64 {
    if x == y {
        0.0
    } else {
        (x - y).abs() / x.abs().max(y.abs())
    }
}

pub fn max_rel_dev(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| rel_dev(a, b))
        .fold(0.0, f64::max)
}
