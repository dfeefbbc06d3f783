use crate::frame::StrataFrame;
use crate::subset::Subset;

/// Post-hoc integerization of a continuous allocation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RoundMode {
    #[default]
    None,
    Ceil,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Relative slack applied to bound comparisons as `lhs ≤ rhs·(1 + tol)`.
    pub tol: f64,
    /// Record per-iteration diagnostics.
    pub trace: bool,
    /// Report KKT multipliers `μ_h` alongside `λ`.
    pub duals: bool,
    pub round: RoundMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 0.0,
            trace: false,
            duals: false,
            round: RoundMode::None,
        }
    }
}

/// Result of a solve: one value per stratum, in frame order.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    pub values: Vec<f64>,
    /// Strata fixed at their bound.
    pub take_set: Subset,
    pub objective: f64,
    pub dual_lambda: Option<f64>,
    pub dual_mu: Option<Vec<f64>>,
    /// Ceiled values when [`RoundMode::Ceil`] was requested.
    pub rounded: Option<Vec<f64>>,
}

impl Allocation {
    pub(crate) fn new(values: Vec<f64>, take_set: Subset, objective: f64) -> Self {
        Allocation {
            values,
            take_set,
            objective,
            dual_lambda: None,
            dual_mu: None,
            rounded: None,
        }
    }

    pub(crate) fn apply_rounding(&mut self, mode: RoundMode) {
        self.rounded = match mode {
            RoundMode::None => None,
            RoundMode::Ceil => Some(self.values.iter().map(|v| v.ceil()).collect()),
        };
    }

    pub fn take_set_labels<'f>(&self, frame: &'f StrataFrame) -> Vec<&'f str> {
        self.take_set.labels(frame)
    }
}

/// One pass of a recursive solve: the take-set before the pass has
/// `take_set_size` members, the pass evaluated `s_value` on it (absent when
/// the take-set already holds every stratum) and moved `added` into it.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub take_set_size: usize,
    pub s_value: Option<f64>,
    /// Newly bounded strata, in label order.
    pub added: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolveTrace {
    /// Number of passes performed, recorded even when steps are not collected.
    pub iterations: usize,
    pub steps: Vec<TraceStep>,
}

impl SolveTrace {
    /// The take-set entering step `r` (0-based), rebuilt from earlier additions.
    pub fn take_set_at(&self, r: usize, universe: usize) -> Subset {
        Subset::from_indices(
            universe,
            self.steps[..r].iter().flat_map(|s| s.added.iter().copied()),
        )
    }

    pub fn s_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().filter_map(|s| s.s_value)
    }
}
