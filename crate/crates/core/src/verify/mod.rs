//! Optimality certificates and solver-independent oracles.
//!
//! [`check_optimal`] tests a vector against the characterization of the
//! optimum of a [`LowerProblem`](crate::LowerProblem): it must be a candidate
//! `z^L` whose take-set `L` is exactly the set of strata with
//! `s(L) ≤ √c_h·m_h/A_h`, or every stratum must sit at its bound with the
//! budget spent exactly. [`kkt_multipliers`] rebuilds the Lagrange
//! multipliers that witness the same fact.
//!
//! The oracles are deliberately naive. [`oracle_subsets`] enumerates every
//! candidate `z^L`; [`oracle_grid`] scans the budget line directly and does
//! not assume the candidate form at all.

mod certificate;
mod kkt;
mod lemma;
mod oracle;
mod verdict;

pub use certificate::{check_optimal, check_optimal_upper, DEFAULT_TOL};
pub use kkt::{kkt_multipliers, stationarity_residual, Multipliers};
pub use lemma::check_lemma_s_mono;
pub use oracle::{oracle_grid, oracle_subsets, oracle_upper, ENUMERATION_CAP};
pub use verdict::{Reason, Verdict};
