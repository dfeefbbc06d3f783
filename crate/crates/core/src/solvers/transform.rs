//! Minimum-cost allocation under upper bounds, solved through the change of
//! variable `z_h = A_h²/(c_h x_h)`, which turns it into a [`LowerProblem`]
//! with `m_h = A_h²/(c_h M_h)` and `Vt = V + A0`.

use crate::allocation::{Allocation, SolveOptions, SolveTrace};
use crate::error::Result;
use crate::evaluate::cost;
use crate::problem::{LowerProblem, MinCostProblem};
use crate::solvers::lrna;

pub fn to_lower(problem: &MinCostProblem) -> Result<LowerProblem> {
    let frame = problem.frame();
    let (a, c, upper) = (frame.a(), frame.c(), problem.upper());
    let m: Vec<f64> = (0..frame.len())
        .map(|h| a[h] * a[h] / (c[h] * upper[h]))
        .collect();
    let min_budget = frame.sum_by(|h| c[h] * m[h]);

    // V ≥ Σ A²/M − A0 implies V + A0 ≥ Σ c·m; recomputing both sides in
    // floating point can break the tie, so the boundary is pinned exactly.
    let mut vt = problem.v() + problem.a0();
    if problem.v() == problem.variance_floor() || vt < min_budget {
        vt = min_budget;
    }
    LowerProblem::new(frame.clone().with_lower(m)?, vt)
}

/// Maps a solution of [`to_lower`]`(problem)` back to `x_h = A_h²/(c_h z_h)`.
/// Strata in the take-set land exactly on `M_h`.
pub fn from_lower(problem: &MinCostProblem, z: &Allocation) -> Allocation {
    let frame = problem.frame();
    let (a, c, upper) = (frame.a(), frame.c(), problem.upper());
    let values: Vec<f64> = (0..frame.len())
        .map(|h| {
            if z.take_set.contains(h) {
                upper[h]
            } else {
                (a[h] * a[h] / (c[h] * z.values[h])).min(upper[h])
            }
        })
        .collect();
    let total = cost(frame, problem.c0(), &values);
    Allocation {
        values,
        take_set: z.take_set.clone(),
        objective: total,
        dual_lambda: z.dual_lambda,
        dual_mu: z.dual_mu.clone(),
        rounded: None,
    }
}

pub fn solve_min_cost(
    problem: &MinCostProblem,
    opts: &SolveOptions,
) -> Result<(Allocation, SolveTrace)> {
    let lower = to_lower(problem)?;
    let (z, trace) = lrna(
        &lower,
        &SolveOptions {
            round: Default::default(),
            ..*opts
        },
    );
    let mut x = from_lower(problem, &z);
    x.apply_rounding(opts.round);
    Ok((x, trace))
}
