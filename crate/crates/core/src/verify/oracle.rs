use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::evaluate::{candidate, objective};
use crate::frame::StrataFrame;
use crate::problem::{LowerProblem, UpperProblem};
use crate::solvers::upper_candidate;
use crate::subset::Subset;

/// Largest frame the subset enumerations accept.
pub const ENUMERATION_CAP: usize = 20;

/// Grid refinement passes; each one rescans the bracket around the previous
/// minimizer at the same resolution.
const ZOOM_PASSES: usize = 3;

/// Best feasible candidate `z^L` over all `2^|H|` take-sets.
///
/// A candidate is feasible when `z^L ≥ m` componentwise; `L = H` is admitted
/// only when the budget equals `Σ c_h m_h`. Ties in the objective go to the
/// larger take-set.
pub fn oracle_subsets(problem: &LowerProblem) -> Result<Allocation> {
    check_cap(problem.len())?;
    let m = problem.lower();
    enumerate(problem.frame(), |set| {
        if set.is_full() && problem.slack() != 0.0 {
            return None;
        }
        let z = candidate(problem, set).expect("subset sized to the frame");
        z.iter().zip(m).all(|(z, m)| z >= m).then_some(z)
    })
    .map(|mut best| {
        if !best.take_set.is_full() {
            let s = crate::evaluate::s_value(problem, &best.take_set).expect("proper subset");
            best.dual_lambda = Some(1.0 / (s * s));
        }
        best
    })
}

/// Best feasible `x^U` over all take-sets `U` of an upper-bounded problem.
pub fn oracle_upper(problem: &UpperProblem) -> Result<Allocation> {
    check_cap(problem.frame().len())?;
    let upper = problem.upper();
    enumerate(problem.frame(), |set| {
        if set.is_full() && problem.excess() != 0.0 {
            return None;
        }
        let x = upper_candidate(problem, set);
        x.iter()
            .zip(upper)
            .all(|(&x, &cap)| x > 0.0 && x <= cap)
            .then_some(x)
    })
}

fn enumerate(
    frame: &StrataFrame,
    mut feasible: impl FnMut(&Subset) -> Option<Vec<f64>>,
) -> Result<Allocation> {
    let mut best: Option<Allocation> = None;
    for bits in 0..1u64 << frame.len() {
        let set = Subset::from_label_bits(frame, bits);
        let Some(values) = feasible(&set) else {
            continue;
        };
        let better = match &best {
            None => true,
            Some(b) => {
                let gap = objective_gap(frame, &values, &b.values);
                gap < 0.0 || (gap == 0.0 && set.len() > b.take_set.len())
            }
        };
        if better {
            let value = objective(frame, &values);
            best = Some(Allocation::new(values, set, value));
        }
    }
    best.ok_or_else(|| Error::Infeasible {
        detail: "no candidate satisfies the bounds".into(),
    })
}

/// `f(x) − f(y)` for `f = Σ A_h²/·`, summed term by term so that strata on
/// which the two vectors agree cancel exactly instead of through two large
/// totals.
fn objective_gap(frame: &StrataFrame, x: &[f64], y: &[f64]) -> f64 {
    let a = frame.a();
    frame.sum_by(|h| {
        if x[h] == y[h] {
            0.0
        } else {
            a[h] * a[h] * (y[h] - x[h]) / (x[h] * y[h])
        }
    })
}

fn check_cap(strata: usize) -> Result<()> {
    if strata > ENUMERATION_CAP {
        Err(Error::TooLarge {
            strata,
            cap: ENUMERATION_CAP,
        })
    } else {
        Ok(())
    }
}

/// Direct minimization of `Σ A_h²/z_h` along the budget plane by grid search.
///
/// Two strata: one coordinate is eliminated through the budget and the other
/// scanned over its feasible interval. Three strata: the same scan nested over
/// `(z_1, z_2)`. Each scan is refined by rescanning the bracket around the
/// best grid point, which contains the true minimizer because the objective
/// is convex along the plane. The cost is `O(resolution)` per pass for two
/// strata and `O(resolution²)` for three.
pub fn oracle_grid(problem: &LowerProblem, resolution: usize) -> Result<Vec<f64>> {
    let frame = problem.frame();
    let (c, m) = (frame.c(), problem.lower());
    let vt = problem.vt();
    let resolution = resolution.max(1);

    match problem.len() {
        2 => {
            // The stratum with the larger budget share is the one eliminated:
            // recovering a tiny share from the budget equation cancels
            // catastrophically.
            let along_first = |z1: f64| [z1, (vt - c[0] * z1) / c[1], 1.0];
            let first_step = |d: f64| [d, -c[0] * d / c[1], 0.0];
            let hi = (vt - c[1] * m[1]) / c[0];
            let z = along_first(zoom_scan(
                frame,
                m[0],
                hi,
                resolution,
                along_first,
                first_step,
            ));
            if c[0] * z[0] <= c[1] * z[1] {
                return Ok(z[..2].to_vec());
            }
            let along_second = |z2: f64| [(vt - c[1] * z2) / c[0], z2, 1.0];
            let second_step = |d: f64| [-c[1] * d / c[0], d, 0.0];
            let hi = (vt - c[0] * m[0]) / c[1];
            let z = along_second(zoom_scan(
                frame,
                m[1],
                hi,
                resolution,
                along_second,
                second_step,
            ));
            Ok(z[..2].to_vec())
        }
        3 => {
            let inner = |z1: f64| {
                let point = |z2: f64| [z1, z2, (vt - c[0] * z1 - c[1] * z2) / c[2]];
                let step = |d: f64| [0.0, d, -c[1] * d / c[2]];
                let hi = (vt - c[0] * z1 - c[2] * m[2]) / c[1];
                point(zoom_scan(frame, m[1], hi, resolution, point, step))
            };
            let hi = (vt - c[1] * m[1] - c[2] * m[2]) / c[0];
            Ok(inner(zoom_scan_curve(frame, m[0], hi, resolution, inner)).to_vec())
        }
        strata => Err(Error::UnsupportedDimension { strata }),
    }
}

/// Minimizes the objective along the budget line `point(t)`, `t ∈ [lo, hi]`,
/// where `step(d)` is the exact displacement `point(t + d) − point(t)`.
///
/// Neighbouring grid values are compared by `Σ A_h²·(r_h − z_h)/(r_h z_h)`
/// with `r − z` taken from `step`, so that the eliminated coordinate never
/// enters as a difference of two rounded values.
fn zoom_scan(
    frame: &StrataFrame,
    lo: f64,
    hi: f64,
    resolution: usize,
    point: impl Fn(f64) -> [f64; 3],
    step: impl Fn(f64) -> [f64; 3],
) -> f64 {
    let a = frame.a();
    zoom(lo, hi, resolution, |reference, t| {
        let (r, z) = (point(reference), point(t));
        if !z[..frame.len()].iter().all(|&z| z > 0.0) {
            return f64::INFINITY;
        }
        let d = step(reference - t);
        frame.sum_by(|h| a[h] * a[h] * d[h] / (r[h] * z[h]))
    })
}

/// [`zoom_scan`] for a curve that is not a line: neighbouring grid points are
/// compared through [`objective_gap`].
fn zoom_scan_curve(
    frame: &StrataFrame,
    lo: f64,
    hi: f64,
    resolution: usize,
    point: impl Fn(f64) -> [f64; 3],
) -> f64 {
    zoom(lo, hi, resolution, |reference, t| {
        let z = point(t);
        if z[..frame.len()].iter().all(|&z| z > 0.0) {
            objective_gap(frame, &z, &point(reference))
        } else {
            f64::INFINITY
        }
    })
}

/// Bracket refinement shared by the scans. `gap(r, t)` is the objective at
/// `t` minus the objective at `r`; it is only ever taken between neighbouring
/// grid points, and convexity puts the minimizer where its sign turns.
fn zoom(lo: f64, hi: f64, resolution: usize, gap: impl Fn(f64, f64) -> f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    let mut best = lo;
    for _ in 0..ZOOM_PASSES {
        if !(hi > lo) {
            return lo;
        }
        let width = (hi - lo) / resolution as f64;
        let at = |k: usize| {
            if k == resolution {
                hi
            } else {
                lo + width * k as f64
            }
        };
        let best_k = (1..=resolution)
            .find(|&k| !(gap(at(k - 1), at(k)) < 0.0))
            .map_or(resolution, |k| k - 1);
        best = at(best_k);
        (lo, hi) = (
            at(best_k.saturating_sub(1)),
            at((best_k + 1).min(resolution)),
        );
    }
    best
}
