use crate::allocation::Allocation;
use crate::evaluate::objective;
use crate::problem::ClassicalProblem;
use crate::subset::Subset;

/// Tschuprow–Neyman allocation `x_h = A_h·n/Σ A_i`.
pub fn neyman(problem: &ClassicalProblem) -> Allocation {
    let frame = problem.frame();
    let a = frame.a();
    let share = problem.n() / frame.sum_by(|h| a[h]);
    let values: Vec<f64> = a.iter().map(|a| a * share).collect();
    let total = objective(frame, &values);
    Allocation::new(values, Subset::empty(frame.len()), total)
}
