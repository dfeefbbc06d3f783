use crate::error::{Error, Result};
use crate::evaluate::s_value;
use crate::problem::LowerProblem;
use crate::subset::Subset;

/// Evaluates both sides of the monotonicity equivalence of `s` for `A ⊆ B ⊊ H`:
///
/// ```text
/// s(A) ≥ s(B)   ⇔   s(A)·Σ_{h∈B∖A} A_h√c_h ≤ Σ_{h∈B∖A} c_h m_h
/// ```
///
/// and reports whether they agree.
pub fn check_lemma_s_mono(problem: &LowerProblem, a: &Subset, b: &Subset) -> Result<bool> {
    if !a.is_subset(b) {
        return Err(Error::InvalidPair {
            detail: "A is not contained in B".into(),
        });
    }
    if b.is_full() {
        return Err(Error::InvalidPair {
            detail: "B covers every stratum".into(),
        });
    }
    let (sa, sb) = (s_value(problem, a)?, s_value(problem, b)?);
    let (budget, weight) = (problem.budget_at_bound(), problem.weight());
    let diff = || {
        problem
            .frame()
            .order()
            .iter()
            .copied()
            .filter(|&h| b.contains(h) && !a.contains(h))
    };
    let weight_gap: f64 = diff().map(|h| weight[h]).sum();
    let budget_gap: f64 = diff().map(|h| budget[h]).sum();
    Ok((sa >= sb) == (sa * weight_gap <= budget_gap))
}
