//! Evaluators shared by the solvers and the verifiers: the variance and cost
//! functions, the set function `s(L)` and the candidate vector `z^L`.

use crate::error::{Error, Result};
use crate::frame::StrataFrame;
use crate::problem::LowerProblem;
use crate::subset::Subset;

/// `Σ A_h²/x_h − A0`.
pub fn variance(frame: &StrataFrame, a0: f64, x: &[f64]) -> Result<f64> {
    check_len(frame, x)?;
    if let Some(h) = frame.order().iter().copied().find(|&h| !(x[h] > 0.0)) {
        return Err(Error::NonPositiveAllocation {
            label: frame.label(h).to_owned(),
            value: x[h],
        });
    }
    let a = frame.a();
    Ok(frame.sum_by(|h| a[h] * a[h] / x[h]) - a0)
}

/// `c0 + Σ c_h x_h`.
///
/// # Panics
///
/// Panics if `x` does not have one entry per stratum.
pub fn cost(frame: &StrataFrame, c0: f64, x: &[f64]) -> f64 {
    assert_eq!(x.len(), frame.len(), "one allocation value per stratum");
    let c = frame.c();
    c0 + frame.sum_by(|h| c[h] * x[h])
}

/// `Σ A_h²/z_h`, the objective shared by the lower, classical and upper problems.
pub(crate) fn objective(frame: &StrataFrame, z: &[f64]) -> f64 {
    let a = frame.a();
    frame.sum_by(|h| a[h] * a[h] / z[h])
}

/// The set function `s(L) = (Vt − Σ_{h∈L} c_h m_h) / Σ_{h∉L} A_h √c_h`.
///
/// The numerator is evaluated as `(Vt − Σ_H c_h m_h) + Σ_{h∉L} c_h m_h`, which
/// is the same quantity but is exactly `Σ_{h∉L} c_h m_h` when the budget
/// leaves no slack.
pub fn s_value(problem: &LowerProblem, take_set: &Subset) -> Result<f64> {
    check_subset(problem, take_set)?;
    if take_set.is_full() {
        return Err(Error::FullTakeSet);
    }
    Ok(s_over(
        problem,
        problem
            .frame()
            .order()
            .iter()
            .copied()
            .filter(|&h| !take_set.contains(h)),
    ))
}

/// `s` evaluated over the complement set `rest`, given in label order.
pub(crate) fn s_over(problem: &LowerProblem, rest: impl Iterator<Item = usize>) -> f64 {
    let (b, w) = (problem.budget_at_bound(), problem.weight());
    let (num, den) = rest.fold((0.0, 0.0), |(num, den), h| (num + b[h], den + w[h]));
    (problem.slack() + num) / den
}

/// The candidate vector `z^L`: `m_h` on `L`, `(A_h/√c_h)·s(L)` elsewhere.
pub fn candidate(problem: &LowerProblem, take_set: &Subset) -> Result<Vec<f64>> {
    check_subset(problem, take_set)?;
    if take_set.is_full() {
        return Ok(problem.lower().to_vec());
    }
    let s = s_value(problem, take_set)?;
    Ok(candidate_with_s(problem, take_set, s))
}

pub(crate) fn candidate_with_s(problem: &LowerProblem, take_set: &Subset, s: f64) -> Vec<f64> {
    let (m, scale) = (problem.lower(), problem.scale());
    (0..problem.len())
        .map(|h| {
            if take_set.contains(h) {
                m[h]
            } else {
                scale[h] * s
            }
        })
        .collect()
}

/// `A_h = N_h·S_h` and `A0 = Σ N_h·S_h²` for simple random sampling without
/// replacement within strata.
///
/// Errors name strata by their 1-based position.
pub fn srswor_params(sizes: &[f64], sd: &[f64]) -> Result<(Vec<f64>, f64)> {
    if sizes.len() != sd.len() {
        return Err(Error::LengthMismatch {
            field: "S",
            expected: sizes.len(),
            found: sd.len(),
        });
    }
    let mut a = Vec::with_capacity(sizes.len());
    let mut a0 = 0.0;
    for (k, (&n, &s)) in sizes.iter().zip(sd).enumerate() {
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NonPositiveInput {
                label: (k + 1).to_string(),
                field: "N",
                value: n,
            });
        }
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::NegativeParameter {
                label: (k + 1).to_string(),
                field: "S",
                value: s,
            });
        }
        if s == 0.0 {
            return Err(Error::ZeroA {
                label: (k + 1).to_string(),
            });
        }
        a.push(n * s);
        a0 += n * s * s;
    }
    Ok((a, a0))
}

/// Lower bounds `m_h = N_h²S_h²/(R_h + N_h S_h²)` implied by per-stratum
/// variance caps `R_h` on the domain totals.
pub fn lower_bounds_from_precision(sizes: &[f64], sd: &[f64], caps: &[f64]) -> Result<Vec<f64>> {
    for (field, column) in [("S", sd), ("R", caps)] {
        if column.len() != sizes.len() {
            return Err(Error::LengthMismatch {
                field,
                expected: sizes.len(),
                found: column.len(),
            });
        }
    }
    let mut m = Vec::with_capacity(sizes.len());
    for k in 0..sizes.len() {
        for (field, v) in [("N", sizes[k]), ("S", sd[k]), ("R", caps[k])] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::NonPositiveInput {
                    label: (k + 1).to_string(),
                    field,
                    value: v,
                });
            }
        }
        let ns2 = sizes[k] * sd[k] * sd[k];
        m.push(sizes[k] * ns2 / (caps[k] + ns2));
    }
    Ok(m)
}

fn check_len(frame: &StrataFrame, x: &[f64]) -> Result<()> {
    if x.len() == frame.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            field: "allocation",
            expected: frame.len(),
            found: x.len(),
        })
    }
}

fn check_subset(problem: &LowerProblem, set: &Subset) -> Result<()> {
    if set.universe() == problem.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            field: "subset",
            expected: problem.len(),
            found: set.universe(),
        })
    }
}
