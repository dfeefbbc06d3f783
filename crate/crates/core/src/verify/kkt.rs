//! Lagrange multipliers for the lower-bounded problem.
//!
//! With `f(z) = Σ A_h²/z_h`, budget constraint `Σ c_h z_h = Vt` and bound
//! constraints `m_h − z_h ≤ 0`, the KKT system reads
//!
//! ```text
//! −A_h²/z_h² + λ·c_h − μ_h = 0,   μ_h ≥ 0,   μ_h·(m_h − z_h) = 0.
//! ```
//!
//! For a proper take-set `L` the multipliers are `λ = 1/s(L)²` and
//! `μ_h = λ·c_h − A_h²/m_h²` on `L` (zero elsewhere). When every stratum is at
//! its bound any `λ ≥ max_h A_h²/(m_h² c_h)` works; the smallest one is used.

use crate::error::{Error, Result};
use crate::evaluate::s_value;
use crate::problem::LowerProblem;
use crate::subset::Subset;

/// Negative `μ_h` within this fraction of `λ·c_h` count as rounding noise.
const MU_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Multipliers {
    pub lambda: f64,
    pub mu: Vec<f64>,
}

pub fn kkt_multipliers(
    problem: &LowerProblem,
    z: &[f64],
    take_set: &Subset,
) -> Result<Multipliers> {
    let frame = problem.frame();
    if z.len() != problem.len() || take_set.universe() != problem.len() {
        return Err(Error::LengthMismatch {
            field: "allocation",
            expected: problem.len(),
            found: z.len().min(take_set.universe()),
        });
    }
    let (a, c, m) = (frame.a(), frame.c(), problem.lower());
    let pressure = |h: usize| a[h] * a[h] / (m[h] * m[h]);

    let lambda = if take_set.is_full() {
        (0..problem.len())
            .map(|h| pressure(h) / c[h])
            .fold(f64::NEG_INFINITY, f64::max)
    } else {
        let s = s_value(problem, take_set)?;
        1.0 / (s * s)
    };

    let mut mu = vec![0.0; problem.len()];
    for &h in frame.order() {
        if !take_set.contains(h) {
            continue;
        }
        let value = lambda * c[h] - pressure(h);
        if value < -MU_SLACK * lambda * c[h] {
            return Err(Error::NegativeMultiplier {
                label: frame.label(h).to_owned(),
                value,
            });
        }
        mu[h] = value.max(0.0);
    }
    Ok(Multipliers { lambda, mu })
}

/// Largest stationarity residual `|−A_h²/z_h² + λc_h − μ_h|`, relative to `λ·c_h`.
pub fn stationarity_residual(problem: &LowerProblem, z: &[f64], mult: &Multipliers) -> f64 {
    let frame = problem.frame();
    let (a, c) = (frame.a(), frame.c());
    (0..problem.len())
        .map(|h| {
            let scale = mult.lambda * c[h];
            (-a[h] * a[h] / (z[h] * z[h]) + scale - mult.mu[h]).abs() / scale
        })
        .fold(0.0, f64::max)
}
