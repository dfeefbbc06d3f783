//! Recursive Neyman allocation under lower bounds.
//!
//! Starting from an empty take-set `L`, each pass evaluates `s(L)` over the
//! strata still free and moves every free stratum with `s(L) ≤ √c_h·m_h/A_h`
//! (equivalently `(A_h/√c_h)·s(L) ≤ m_h`) into `L`. The recursion stops on the
//! first pass that adds nothing; the answer is the candidate `z^L`.
//!
//! Each pass costs one sweep over the free strata, so a solve is
//! `O(|H|·passes)` with at most `|H| + 1` passes.

use crate::allocation::{Allocation, SolveOptions, SolveTrace, TraceStep};
use crate::evaluate::{candidate_with_s, objective, s_over};
use crate::problem::LowerProblem;
use crate::subset::Subset;

pub fn lrna(problem: &LowerProblem, opts: &SolveOptions) -> (Allocation, SolveTrace) {
    let n = problem.len();
    let threshold = problem.threshold();
    let widen = 1.0 + opts.tol;

    // free strata, kept in label order
    let mut free: Vec<usize> = problem.frame().order().to_vec();
    let mut take_set = Subset::empty(n);
    let mut trace = SolveTrace::default();
    let mut last_s = None;

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

        let s = s_over(problem, free.iter().copied());
        let added: Vec<usize> = free
            .iter()
            .copied()
            .filter(|&h| s <= threshold[h] * widen)
            .collect();
        if opts.trace {
            trace.steps.push(TraceStep {
                take_set_size: take_set.len(),
                s_value: Some(s),
                added: added.clone(),
            });
        }
        if added.is_empty() {
            last_s = Some(s);
            break;
        }
        for &h in &added {
            take_set.insert(h);
        }
        free.retain(|&h| !take_set.contains(h));
    }

    let m = problem.lower();
    let values = match last_s {
        Some(s) => {
            let mut z = candidate_with_s(problem, &take_set, s);
            // rounding in A_h/√c_h · s can land an ulp under m_h
            for (z, &m) in z.iter_mut().zip(m) {
                *z = z.max(m);
            }
            z
        }
        None => m.to_vec(),
    };
    let total = objective(problem.frame(), &values);
    let mut alloc = Allocation::new(values, take_set, total);

    if let Some(s) = last_s {
        let lambda = 1.0 / (s * s);
        alloc.dual_lambda = Some(lambda);
        if opts.duals {
            let (a, c) = (problem.frame().a(), problem.frame().c());
            alloc.dual_mu = Some(
                (0..n)
                    .map(|h| {
                        if alloc.take_set.contains(h) {
                            lambda * c[h] - a[h] * a[h] / (m[h] * m[h])
                        } else {
                            0.0
                        }
                    })
                    .collect(),
            );
        }
    }
    alloc.apply_rounding(opts.round);
    (alloc, trace)
}
