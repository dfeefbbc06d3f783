//! Allocation solvers.

mod lrna;
mod neyman;
mod rna;
mod transform;

pub use lrna::lrna;
pub use neyman::neyman;
pub use rna::{rna, upper_candidate};
pub use transform::{from_lower, solve_min_cost, to_lower};
