use serde::Serialize;

/// Why an allocation was accepted or rejected.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Reason {
    Optimal,
    /// The vector is not the candidate built from its own take-set.
    NotCandidateForm,
    /// A stratum held at its bound should be free.
    TakeSetConditionFails {
        label: String,
    },
    /// A free stratum should be held at its bound.
    OffSetConditionFails {
        label: String,
    },
    /// The budget (or total sample size) constraint is off by `value`.
    EqualityResidual {
        value: f64,
    },
    BoundViolated {
        label: String,
    },
    /// Every stratum is at its bound but the budget is not `Σ c_h m_h`.
    #[serde(rename = "CaseIIBudgetMismatch")]
    CaseIiBudgetMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub accepted: bool,
    pub reason: Reason,
    /// Take-set labels that certified an accepted allocation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub take_set: Option<Vec<String>>,
}

impl Verdict {
    pub fn optimal(take_set: Vec<String>) -> Self {
        Verdict {
            accepted: true,
            reason: Reason::Optimal,
            take_set: Some(take_set),
        }
    }

    pub fn rejected(reason: Reason) -> Self {
        debug_assert!(reason != Reason::Optimal);
        Verdict {
            accepted: false,
            reason,
            take_set: None,
        }
    }
}
