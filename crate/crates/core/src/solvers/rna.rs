//! Recursive Neyman allocation under upper bounds, the mirror image of
//! [`lrna`](super::lrna): strata whose Neyman share reaches `M_h` are fixed
//! at `M_h` and the remaining sample is re-shared among the rest.

use crate::allocation::{Allocation, SolveOptions, SolveTrace, TraceStep};
use crate::evaluate::objective;
use crate::problem::UpperProblem;
use crate::subset::Subset;

pub fn rna(problem: &UpperProblem, opts: &SolveOptions) -> (Allocation, SolveTrace) {
    let n = problem.frame().len();
    let (a, upper) = (problem.frame().a(), problem.upper());
    let widen = 1.0 + opts.tol;

    let mut free: Vec<usize> = problem.frame().order().to_vec();
    let mut take_set = Subset::empty(n);
    let mut trace = SolveTrace::default();
    let mut last_share = None;

    loop {
        trace.iterations += 1;
        if free.is_empty() {
            if opts.trace {
                trace.steps.push(TraceStep {
                    take_set_size: take_set.len(),
                    s_value: None,
                    added: Vec::new(),
                });
            }
            break;
        }
        let q = share_over(problem, free.iter().copied());
        // A_h·q ≥ M_h, compared as M_h/A_h ≤ q
        let added: Vec<usize> = free
            .iter()
            .copied()
            .filter(|&h| upper[h] / a[h] <= q * widen)
            .collect();
        if opts.trace {
            trace.steps.push(TraceStep {
                take_set_size: take_set.len(),
                s_value: Some(q),
                added: added.clone(),
            });
        }
        if added.is_empty() {
            last_share = Some(q);
            break;
        }
        for &h in &added {
            take_set.insert(h);
        }
        free.retain(|&h| !take_set.contains(h));
    }

    let values = match last_share {
        Some(q) => shares(problem, &take_set, q)
            .into_iter()
            .zip(upper)
            .map(|(x, &cap)| x.min(cap))
            .collect(),
        None => upper.to_vec(),
    };
    let total = objective(problem.frame(), &values);
    let mut alloc = Allocation::new(values, take_set, total);
    alloc.apply_rounding(opts.round);
    (alloc, trace)
}

/// `x^U`: `M_h` on `U`, `A_h·(n − Σ_U M_i)/Σ_{H∖U} A_i` elsewhere.
pub fn upper_candidate(problem: &UpperProblem, take_set: &Subset) -> Vec<f64> {
    if take_set.is_full() {
        return problem.upper().to_vec();
    }
    let q = share_over(
        problem,
        problem
            .frame()
            .order()
            .iter()
            .copied()
            .filter(|&h| !take_set.contains(h)),
    );
    shares(problem, take_set, q)
}

/// `(n − Σ_U M_i)/Σ_{H∖U} A_i` over the free strata `rest` (label order),
/// with the numerator evaluated as `Σ_{H∖U} M_i − (Σ_H M_i − n)`.
fn share_over(problem: &UpperProblem, rest: impl Iterator<Item = usize>) -> f64 {
    let (a, upper) = (problem.frame().a(), problem.upper());
    let (num, den) = rest.fold((0.0, 0.0), |(num, den), h| (num + upper[h], den + a[h]));
    (num - problem.excess()) / den
}

fn shares(problem: &UpperProblem, take_set: &Subset, q: f64) -> Vec<f64> {
    let (a, upper) = (problem.frame().a(), problem.upper());
    (0..a.len())
        .map(|h| {
            if take_set.contains(h) {
                upper[h]
            } else {
                a[h] * q
            }
        })
        .collect()
}
