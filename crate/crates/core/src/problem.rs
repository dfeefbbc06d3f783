//! The four allocation problems.
//!
//! * [`LowerProblem`]: minimize `Σ A_h²/z_h` subject to `Σ c_h z_h = Vt`, `z_h ≥ m_h`.
//! * [`MinCostProblem`]: minimize `Σ c_h x_h` subject to `Σ A_h²/x_h − A0 = V`, `x_h ≤ M_h`.
//! * [`ClassicalProblem`]: minimize `Σ A_h²/x_h` subject to `Σ x_h = n`.
//! * [`UpperProblem`]: the classical problem with `x_h ≤ M_h`.
//!
//! Constructors validate the frame and the feasibility conditions, so a
//! problem value always describes a feasible instance.

use crate::error::{Error, Result};
use crate::frame::{BoundRequirement, StrataFrame};

/// Minimum `Σ A_h²/z_h` at a fixed budget `Σ c_h z_h = Vt` with lower bounds `m_h`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerProblem {
    frame: StrataFrame,
    vt: f64,
    min_budget: f64,
    slack: f64,
    budget: Vec<f64>,
    weight: Vec<f64>,
    ratio: Vec<f64>,
    scale: Vec<f64>,
}

impl LowerProblem {
    pub fn new(frame: StrataFrame, vt: f64) -> Result<Self> {
        frame.validate(BoundRequirement::Lower)?;
        if !(vt.is_finite() && vt > 0.0) {
            return Err(Error::InvalidScalar {
                name: "Vt",
                value: vt,
            });
        }
        let m = frame.lower().expect("validated lower bounds");
        let (a, c) = (frame.a(), frame.c());

        // c_h·m_h, A_h·√c_h, their ratio √c_h·m_h/A_h and A_h/√c_h
        let budget: Vec<f64> = c.iter().zip(m).map(|(c, m)| c * m).collect();
        let weight: Vec<f64> = a.iter().zip(c).map(|(a, c)| a * c.sqrt()).collect();
        let ratio = budget.iter().zip(&weight).map(|(b, w)| b / w).collect();
        let scale = a.iter().zip(c).map(|(a, c)| a / c.sqrt()).collect();

        let min_budget = frame.sum_by(|h| budget[h]);
        if vt < min_budget {
            return Err(Error::Infeasible {
                detail: format!("Vt = {vt} is below Σ c_h m_h = {min_budget}"),
            });
        }
        Ok(LowerProblem {
            frame,
            vt,
            min_budget,
            slack: vt - min_budget,
            budget,
            weight,
            ratio,
            scale,
        })
    }

    pub fn frame(&self) -> &StrataFrame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frame.is_empty()
    }

    pub fn vt(&self) -> f64 {
        self.vt
    }

    pub fn lower(&self) -> &[f64] {
        self.frame.lower().expect("validated lower bounds")
    }

    /// `Σ c_h m_h`, summed in label order.
    pub fn min_budget(&self) -> f64 {
        self.min_budget
    }

    /// `Vt − Σ c_h m_h`; exactly zero only in the all-at-bound case.
    pub fn slack(&self) -> f64 {
        self.slack
    }

    /// Per-stratum `c_h·m_h`.
    pub fn budget_at_bound(&self) -> &[f64] {
        &self.budget
    }

    /// Per-stratum `A_h·√c_h`.
    pub fn weight(&self) -> &[f64] {
        &self.weight
    }

    /// Per-stratum threshold `√c_h·m_h/A_h`, evaluated as `(c_h·m_h)/(A_h·√c_h)`.
    pub fn threshold(&self) -> &[f64] {
        &self.ratio
    }

    /// Per-stratum `A_h/√c_h`.
    pub fn scale(&self) -> &[f64] {
        &self.scale
    }
}

/// Minimum total cost at a fixed variance `V` with upper bounds `M_h`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinCostProblem {
    frame: StrataFrame,
    v: f64,
    a0: f64,
    c0: f64,
    variance_floor: f64,
}

impl MinCostProblem {
    pub fn new(frame: StrataFrame, v: f64, a0: f64, c0: f64) -> Result<Self> {
        frame.validate(BoundRequirement::Upper)?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::InvalidScalar {
                name: "V",
                value: v,
            });
        }
        if !a0.is_finite() {
            return Err(Error::InvalidScalar {
                name: "A0",
                value: a0,
            });
        }
        if !(c0.is_finite() && c0 >= 0.0) {
            return Err(Error::InvalidScalar {
                name: "c0",
                value: c0,
            });
        }
        let upper = frame.upper().expect("validated upper bounds");
        let a = frame.a();
        let variance_floor = frame.sum_by(|h| a[h] * a[h] / upper[h]) - a0;
        if variance_floor < 0.0 {
            return Err(Error::InvalidScalar {
                name: "A0",
                value: a0,
            });
        }
        if v < variance_floor {
            return Err(Error::Infeasible {
                detail: format!("V = {v} is below Σ A_h²/M_h − A0 = {variance_floor}"),
            });
        }
        Ok(MinCostProblem {
            frame,
            v,
            a0,
            c0,
            variance_floor,
        })
    }

    pub fn frame(&self) -> &StrataFrame {
        &self.frame
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn upper(&self) -> &[f64] {
        self.frame.upper().expect("validated upper bounds")
    }

    /// `Σ A_h²/M_h − A0`: the smallest attainable variance.
    pub fn variance_floor(&self) -> f64 {
        self.variance_floor
    }
}

/// Classical allocation of a total sample size `n` without bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalProblem {
    frame: StrataFrame,
    n: f64,
}

impl ClassicalProblem {
    pub fn new(frame: StrataFrame, n: f64) -> Result<Self> {
        frame.validate(BoundRequirement::None)?;
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidScalar {
                name: "n",
                value: n,
            });
        }
        Ok(ClassicalProblem { frame, n })
    }

    pub fn frame(&self) -> &StrataFrame {
        &self.frame
    }

    pub fn n(&self) -> f64 {
        self.n
    }
}

/// Classical allocation with upper bounds `x_h ≤ M_h`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperProblem {
    frame: StrataFrame,
    n: f64,
    capacity: f64,
}

impl UpperProblem {
    pub fn new(frame: StrataFrame, n: f64) -> Result<Self> {
        frame.validate(BoundRequirement::Upper)?;
        if n.is_nan() || n.is_infinite() {
            return Err(Error::InvalidScalar {
                name: "n",
                value: n,
            });
        }
        let upper = frame.upper().expect("validated upper bounds");
        let capacity = frame.sum_by(|h| upper[h]);
        if n <= 0.0 || n > capacity {
            return Err(Error::Infeasible {
                detail: format!("n = {n} must lie in (0, Σ M_h = {capacity}]"),
            });
        }
        Ok(UpperProblem { frame, n, capacity })
    }

    pub fn frame(&self) -> &StrataFrame {
        &self.frame
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn upper(&self) -> &[f64] {
        self.frame.upper().expect("validated upper bounds")
    }

    /// `Σ M_h`, summed in label order.
    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    /// `Σ M_h − n`.
    pub fn excess(&self) -> f64 {
        self.capacity - self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lower_frame(a: &[f64], c: &[f64], m: &[f64]) -> StrataFrame {
        StrataFrame::numbered(a.to_vec(), c.to_vec())
            .unwrap()
            .with_lower(m.to_vec())
            .unwrap()
    }

    #[test]
    fn lower_problem_rejects_small_budget() {
        let frame = lower_frame(&[1.0, 1.0], &[1.0, 1.0], &[3.0, 1.0]);
        assert!(matches!(
            LowerProblem::new(frame.clone(), 3.9),
            Err(Error::Infeasible { .. })
        ));
        let p = LowerProblem::new(frame, 4.0).unwrap();
        assert_eq!(p.slack(), 0.0);
    }

    #[test]
    fn lower_problem_requires_lower_bounds() {
        let frame = StrataFrame::numbered(vec![1.0], vec![1.0]).unwrap();
        assert!(matches!(
            LowerProblem::new(frame, 1.0),
            Err(Error::MissingBound { .. })
        ));
    }

    #[test]
    fn min_cost_feasibility_chain() {
        let frame = StrataFrame::numbered(vec![2.0, 1.0], vec![1.0, 4.0])
            .unwrap()
            .with_upper(vec![2.0, 1.0])
            .unwrap();
        // Σ A²/M = 2 + 1 = 3
        assert!(MinCostProblem::new(frame.clone(), 4.0, 1.0, 0.0).is_ok());
        assert!(matches!(
            MinCostProblem::new(frame.clone(), 1.5, 1.0, 0.0),
            Err(Error::Infeasible { .. })
        ));
        // negative floor: Σ A²/M − A0 < 0
        assert!(matches!(
            MinCostProblem::new(frame.clone(), 4.0, 5.0, 0.0),
            Err(Error::InvalidScalar { name: "A0", .. })
        ));
        // negative A0 is fine while the chain holds
        assert!(MinCostProblem::new(frame, 4.0, -1.0, 0.0).is_ok());
    }

    #[test]
    fn upper_problem_bounds_on_n() {
        let frame = StrataFrame::numbered(vec![1.0, 2.0], vec![1.0, 1.0])
            .unwrap()
            .with_upper(vec![1.0, 3.0])
            .unwrap();
        assert!(UpperProblem::new(frame.clone(), 4.0).is_ok());
        assert!(UpperProblem::new(frame.clone(), 4.5).is_err());
        assert!(UpperProblem::new(frame, 0.0).is_err());
    }
}
