use crate::evaluate::{candidate_with_s, s_value};
use crate::problem::{LowerProblem, UpperProblem};
use crate::subset::Subset;
use crate::verify::oracle::oracle_upper;
use crate::verify::verdict::{Reason, Verdict};
use crate::Result;

/// Relative tolerance used by the verifiers unless told otherwise.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Certifies `z` as the optimum of `problem`.
///
/// The take-set is inferred as `{h : |z_h − m_h| ≤ tol·m_h}`. When that fails
/// and some strata sit within tolerance of, but not exactly on, their bound,
/// the exact-equality labelling is tried as well; either one certifying is
/// enough since only the value vector is unique.
pub fn check_optimal(problem: &LowerProblem, z: &[f64], tol: f64) -> Verdict {
    let frame = problem.frame();
    let (m, c) = (problem.lower(), frame.c());
    if z.len() != problem.len() {
        return Verdict::rejected(Reason::NotCandidateForm);
    }
    for &h in frame.order() {
        if !(z[h] > 0.0) || z[h] < m[h] * (1.0 - tol) {
            return Verdict::rejected(Reason::BoundViolated {
                label: frame.label(h).to_owned(),
            });
        }
    }
    let spent = frame.sum_by(|h| c[h] * z[h]);
    if (spent - problem.vt()).abs() > tol * problem.vt() {
        return Verdict::rejected(Reason::EqualityResidual {
            value: spent - problem.vt(),
        });
    }

    let near = Subset::from_indices(
        z.len(),
        (0..z.len()).filter(|&h| (z[h] - m[h]).abs() <= tol * m[h]),
    );
    let exact = Subset::from_indices(z.len(), (0..z.len()).filter(|&h| z[h] <= m[h]));
    match certify(problem, z, &near, tol) {
        Ok(()) => Verdict::optimal(labels(problem, &near)),
        Err(reason) if exact != near => match certify(problem, z, &exact, tol) {
            Ok(()) => Verdict::optimal(labels(problem, &exact)),
            Err(_) => Verdict::rejected(reason),
        },
        Err(reason) => Verdict::rejected(reason),
    }
}

fn certify(problem: &LowerProblem, z: &[f64], take_set: &Subset, tol: f64) -> Result<(), Reason> {
    let frame = problem.frame();
    if take_set.is_full() {
        return if (problem.vt() - problem.min_budget()).abs() <= tol * problem.vt() {
            Ok(())
        } else {
            Err(Reason::CaseIiBudgetMismatch)
        };
    }
    let s = s_value(problem, take_set).expect("take-set is a proper subset");
    let expected = candidate_with_s(problem, take_set, s);
    if z.iter()
        .zip(&expected)
        .any(|(z, e)| (z - e).abs() > tol * e)
    {
        return Err(Reason::NotCandidateForm);
    }
    let threshold = problem.threshold();
    for &h in frame.order() {
        let label = || frame.label(h).to_owned();
        if take_set.contains(h) {
            if s > threshold[h] * (1.0 + tol) {
                return Err(Reason::TakeSetConditionFails { label: label() });
            }
        } else if s <= threshold[h] * (1.0 - tol) {
            return Err(Reason::OffSetConditionFails { label: label() });
        }
    }
    Ok(())
}

/// Certifies `x` as the optimum of an upper-bounded classical problem by
/// comparing it with the best candidate from exhaustive enumeration.
pub fn check_optimal_upper(problem: &UpperProblem, x: &[f64], tol: f64) -> Result<Verdict> {
    let frame = problem.frame();
    let upper = problem.upper();
    if x.len() != frame.len() {
        return Ok(Verdict::rejected(Reason::NotCandidateForm));
    }
    let best = oracle_upper(problem)?;
    for &h in frame.order() {
        if x[h] > upper[h] * (1.0 + tol) {
            return Ok(Verdict::rejected(Reason::BoundViolated {
                label: frame.label(h).to_owned(),
            }));
        }
        if !(x[h] > 0.0) {
            return Ok(Verdict::rejected(Reason::NotCandidateForm));
        }
    }
    let total = frame.sum_by(|h| x[h]);
    if (total - problem.n()).abs() > tol * problem.n() {
        return Ok(Verdict::rejected(Reason::EqualityResidual {
            value: total - problem.n(),
        }));
    }
    for &h in frame.order() {
        if (x[h] - best.values[h]).abs() > tol * best.values[h] {
            let label = frame.label(h).to_owned();
            return Ok(Verdict::rejected(if best.take_set.contains(h) {
                Reason::OffSetConditionFails { label }
            } else {
                Reason::TakeSetConditionFails { label }
            }));
        }
    }
    Ok(Verdict::optimal(
        best.take_set
            .labels(frame)
            .into_iter()
            .map(str::to_owned)
            .collect(),
    ))
}

fn labels(problem: &LowerProblem, set: &Subset) -> Vec<String> {
    set.labels(problem.frame())
        .into_iter()
        .map(str::to_owned)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::StrataFrame;

    fn lower(a: &[f64], c: &[f64], m: &[f64], vt: f64) -> LowerProblem {
        let frame = StrataFrame::numbered(a.to_vec(), c.to_vec())
            .unwrap()
            .with_lower(m.to_vec())
            .unwrap();
        LowerProblem::new(frame, vt).unwrap()
    }

    fn upper(a: &[f64], cap: &[f64], n: f64) -> UpperProblem {
        let frame = StrataFrame::numbered(a.to_vec(), vec![1.0; a.len()])
            .unwrap()
            .with_upper(cap.to_vec())
            .unwrap();
        UpperProblem::new(frame, n).unwrap()
    }

    #[test]
    fn symmetric_optimum_is_accepted() {
        let p = lower(&[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0], 4.0);
        let v = check_optimal(&p, &[2.0, 2.0], DEFAULT_TOL);
        assert_eq!(v, Verdict::optimal(vec![]));
    }

    #[test]
    fn wrong_take_set_is_rejected() {
        let p = lower(&[1.0, 1.0], &[1.0, 1.0], &[3.0, 1.0], 6.0);
        let v = check_optimal(&p, &[5.0, 1.0], DEFAULT_TOL);
        assert!(!v.accepted);
        assert_eq!(
            v.reason,
            Reason::TakeSetConditionFails { label: "2".into() }
        );
    }

    #[test]
    fn boundary_tie_certifies_with_stratum_in_take_set() {
        let p = lower(&[1.0, 1.0], &[1.0, 1.0], &[3.0, 1.0], 6.0);
        let v = check_optimal(&p, &[3.0, 3.0], DEFAULT_TOL);
        assert_eq!(v, Verdict::optimal(vec!["1".into()]));
        assert!(check_optimal(&p, &[3.0, 3.0], 0.0).accepted);
    }

    #[test]
    fn rejection_reasons() {
        let p = lower(&[1.0, 1.0], &[1.0, 1.0], &[3.0, 1.0], 6.0);
        assert_eq!(
            check_optimal(&p, &[2.0, 4.0], DEFAULT_TOL).reason,
            Reason::BoundViolated { label: "1".into() }
        );
        assert!(matches!(
            check_optimal(&p, &[3.0, 4.0], DEFAULT_TOL).reason,
            Reason::EqualityResidual { value } if value == 1.0
        ));
        assert_eq!(
            check_optimal(&p, &[3.5, 2.5], DEFAULT_TOL).reason,
            Reason::NotCandidateForm
        );
        assert_eq!(
            check_optimal(&p, &[3.0], DEFAULT_TOL).reason,
            Reason::NotCandidateForm
        );
    }

    #[test]
    fn all_at_bound_requires_exact_budget() {
        let p = lower(&[1.0, 1.0], &[2.0, 1.0], &[1.0, 2.0], 4.0);
        assert_eq!(
            check_optimal(&p, &[1.0, 2.0], DEFAULT_TOL),
            Verdict::optimal(vec!["1".into(), "2".into()])
        );
    }

    #[test]
    fn free_stratum_below_threshold_is_rejected() {
        // z^∅ = (3, 3) is a valid vector but ∅ does not certify it; with
        // stratum 1 kept free the tie must be labelled into the take-set.
        let p = lower(&[1.0, 1.0], &[1.0, 1.0], &[3.0, 1.0], 6.0);
        let err = certify(&p, &[3.0, 3.0], &Subset::empty(2), 0.0).unwrap_err();
        assert_eq!(err, Reason::OffSetConditionFails { label: "1".into() });
    }

    #[test]
    fn upper_examples() {
        let p = upper(&[3.0, 1.0], &[2.0, 10.0], 4.0);
        assert_eq!(
            check_optimal_upper(&p, &[2.0, 2.0], DEFAULT_TOL).unwrap(),
            Verdict::optimal(vec!["1".into()])
        );
        assert_eq!(
            check_optimal_upper(&p, &[3.0, 1.0], DEFAULT_TOL)
                .unwrap()
                .reason,
            Reason::BoundViolated { label: "1".into() }
        );
        let p = upper(&[1.0, 1.0], &[5.0, 5.0], 4.0);
        assert!(
            check_optimal_upper(&p, &[2.0, 2.0], DEFAULT_TOL)
                .unwrap()
                .accepted
        );
        assert!(
            !check_optimal_upper(&p, &[1.5, 2.5], DEFAULT_TOL)
                .unwrap()
                .accepted
        );
    }
}
