//! Optimum sample allocation for stratified sampling.
//!
//! Two coupled problems are solved exactly:
//!
//! * minimum survey cost at a fixed variance with per-stratum upper bounds
//!   ([`MinCostProblem`], solved by [`solve_min_cost`]), and
//! * minimum variance at a fixed budget with per-stratum lower bounds
//!   ([`LowerProblem`], solved by [`lrna`]).
//!
//! The first maps onto the second through `z_h = A_h²/(c_h x_h)`. The classical
//! Neyman allocation and its upper-bounded recursive variant are included for
//! comparison. The [`verify`] module certifies allocations against the KKT
//! optimality conditions and carries brute-force oracles.
//!
//! ```
//! use stratalloc::{lrna, LowerProblem, SolveOptions, StrataFrame};
//!
//! let frame = StrataFrame::numbered(vec![1.0, 1.0], vec![1.0, 1.0])?
//!     .with_lower(vec![3.0, 1.0])?;
//! let problem = LowerProblem::new(frame, 6.0)?;
//! let (alloc, _) = lrna(&problem, &SolveOptions::default());
//! assert_eq!(alloc.values, vec![3.0, 3.0]);
//! # Ok::<(), stratalloc::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose so that NaN fails positivity checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod allocation;
mod error;
mod evaluate;
mod frame;
mod problem;
mod solvers;
mod subset;
pub mod verify;

pub use allocation::{Allocation, RoundMode, SolveOptions, SolveTrace, TraceStep};
pub use error::{Error, Result};
pub use evaluate::{
    candidate, cost, lower_bounds_from_precision, s_value, srswor_params, variance,
};
pub use frame::{BoundRequirement, StrataFrame};
pub use problem::{ClassicalProblem, LowerProblem, MinCostProblem, UpperProblem};
pub use solvers::{from_lower, lrna, neyman, rna, solve_min_cost, to_lower, upper_candidate};
pub use subset::Subset;
