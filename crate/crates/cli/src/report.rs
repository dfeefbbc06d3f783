//! JSON reports. Field order is fixed by the struct definitions and floats
//! are written in shortest round-trip form, so equal inputs give equal bytes.

use serde::Serialize;
use stratalloc::{Allocation, SolveTrace, StrataFrame};

use crate::problem::Echo;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub stratum: String,
    pub value: f64,
}

pub fn entries(frame: &StrataFrame, values: &[f64]) -> Vec<Entry> {
    frame
        .labels()
        .iter()
        .zip(values)
        .map(|(stratum, &value)| Entry {
            stratum: stratum.clone(),
            value,
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub problem: Echo,
    pub allocation: Vec<Entry>,
    pub take_set: Vec<String>,
    /// Cost for `mincost`, `Σ A_h²/x_h` otherwise.
    pub objective: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duals: Option<Duals>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Trace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounded: Option<Vec<Entry>>,
}

#[derive(Debug, Serialize)]
pub struct Duals {
    /// Absent when every stratum sits at its bound.
    pub lambda: Option<f64>,
    pub mu: Option<Vec<Entry>>,
}

#[derive(Debug, Serialize)]
pub struct Trace {
    pub iterations: usize,
    pub steps: Vec<Step>,
}

#[derive(Debug, Serialize)]
pub struct Step {
    pub take_set: Vec<String>,
    pub s_value: Option<f64>,
    pub added: Vec<String>,
}

impl Report {
    pub fn new(echo: Echo, frame: &StrataFrame, alloc: &Allocation) -> Self {
        Report {
            problem: echo,
            allocation: entries(frame, &alloc.values),
            take_set: labels(frame, alloc.take_set.indices()),
            objective: alloc.objective,
            duals: None,
            trace: None,
            rounded: alloc.rounded.as_ref().map(|r| entries(frame, r)),
        }
    }

    pub fn with_duals(mut self, frame: &StrataFrame, alloc: &Allocation) -> Self {
        self.duals = Some(Duals {
            lambda: alloc.dual_lambda,
            mu: alloc.dual_mu.as_ref().map(|mu| entries(frame, mu)),
        });
        self
    }

    pub fn with_trace(mut self, frame: &StrataFrame, trace: &SolveTrace) -> Self {
        let steps = (0..trace.steps.len())
            .map(|r| {
                let step = &trace.steps[r];
                Step {
                    take_set: labels(frame, trace.take_set_at(r, frame.len()).indices()),
                    s_value: step.s_value,
                    added: labels(frame, step.added.iter().copied()),
                }
            })
            .collect();
        self.trace = Some(Trace {
            iterations: trace.iterations,
            steps,
        });
        self
    }
}

/// Labels of `indices`, sorted.
fn labels(frame: &StrataFrame, indices: impl Iterator<Item = usize>) -> Vec<String> {
    let mut out: Vec<String> = indices.map(|h| frame.label(h).to_owned()).collect();
    out.sort();
    out
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub problem: Echo,
    pub method: &'static str,
    pub allocation: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub take_set: Option<Vec<String>>,
    pub objective: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compare: Option<Comparison>,
}

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub solver: Vec<Entry>,
    pub max_rel_dev: f64,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports hold only finite numbers");
    text.push('\n');
    text
}

pub fn oracle_labels(frame: &StrataFrame, alloc: &Allocation) -> Vec<String> {
    labels(frame, alloc.take_set.indices())
}
