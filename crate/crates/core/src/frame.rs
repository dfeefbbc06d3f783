//! Per-stratum parameter table shared by every allocation problem.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Which bound column a problem needs populated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRequirement {
    None,
    Lower,
    Upper,
}

/// Strata parameters keyed by opaque labels.
///
/// Columns are stored in input order. Every summation over strata runs in
/// label-sorted order (see [`StrataFrame::order`]) so that results do not
/// depend on how the rows were supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct StrataFrame {
    labels: Vec<String>,
    a: Vec<f64>,
    c: Vec<f64>,
    lower: Option<Vec<f64>>,
    upper: Option<Vec<f64>>,
    sizes: Option<Vec<f64>>,
    sd: Option<Vec<f64>>,
    order: Vec<usize>,
}

impl StrataFrame {
    /// Builds a frame from labels, `A_h` and unit costs `c_h`.
    pub fn new(labels: Vec<String>, a: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        check_len("A", labels.len(), a.len())?;
        check_len("c", labels.len(), c.len())?;

        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        drop(seen);

        let frame = StrataFrame {
            order: sorted_order(&labels),
            labels,
            a,
            c,
            lower: None,
            upper: None,
            sizes: None,
            sd: None,
        };
        frame.check_positive("A", &frame.a)?;
        frame.check_positive("c", &frame.c)?;
        Ok(frame)
    }

    /// Frame labelled `"1"`, `"2"`, ... in input order.
    pub fn numbered(a: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        let labels = (1..=a.len()).map(|i| i.to_string()).collect();
        Self::new(labels, a, c)
    }

    pub fn with_lower(mut self, lower: Vec<f64>) -> Result<Self> {
        check_len("m", self.len(), lower.len())?;
        self.check_positive("m", &lower)?;
        self.lower = Some(lower);
        Ok(self)
    }

    pub fn with_upper(mut self, upper: Vec<f64>) -> Result<Self> {
        check_len("M", self.len(), upper.len())?;
        self.check_positive("M", &upper)?;
        self.upper = Some(upper);
        self.check_upper_within_sizes()?;
        Ok(self)
    }

    pub fn with_sizes(mut self, sizes: Vec<f64>) -> Result<Self> {
        check_len("N", self.len(), sizes.len())?;
        self.check_positive("N", &sizes)?;
        self.sizes = Some(sizes);
        self.check_upper_within_sizes()?;
        Ok(self)
    }

    pub fn with_sd(mut self, sd: Vec<f64>) -> Result<Self> {
        check_len("S", self.len(), sd.len())?;
        for (label, &v) in self.labels.iter().zip(&sd) {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::NegativeParameter {
                    label: label.clone(),
                    field: "S",
                    value: v,
                });
            }
        }
        self.sd = Some(sd);
        Ok(self)
    }

    /// Replaces `A_h` (used when deriving it from `N_h` and `S_h`).
    pub fn with_a(mut self, a: Vec<f64>) -> Result<Self> {
        check_len("A", self.len(), a.len())?;
        self.check_positive("A", &a)?;
        self.a = a;
        Ok(self)
    }

    /// Re-checks every frame invariant and that the required bound column is present.
    pub fn validate(&self, requirement: BoundRequirement) -> Result<()> {
        if self.labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        let mut seen = HashSet::with_capacity(self.len());
        for label in &self.labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        self.check_positive("A", &self.a)?;
        self.check_positive("c", &self.c)?;
        if let Some(m) = &self.lower {
            self.check_positive("m", m)?;
        }
        if let Some(upper) = &self.upper {
            self.check_positive("M", upper)?;
        }
        if let Some(n) = &self.sizes {
            self.check_positive("N", n)?;
        }
        self.check_upper_within_sizes()?;

        let (column, bound) = match requirement {
            BoundRequirement::None => return Ok(()),
            BoundRequirement::Lower => (&self.lower, "lower"),
            BoundRequirement::Upper => (&self.upper, "upper"),
        };
        match column {
            Some(_) => Ok(()),
            None => Err(Error::MissingBound {
                label: self.labels[self.order[0]].clone(),
                bound,
            }),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, h: usize) -> &str {
        &self.labels[h]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.order
            .binary_search_by(|&i| self.labels[i].as_str().cmp(label))
            .ok()
            .map(|k| self.order[k])
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn lower(&self) -> Option<&[f64]> {
        self.lower.as_deref()
    }

    pub fn upper(&self) -> Option<&[f64]> {
        self.upper.as_deref()
    }

    pub fn sizes(&self) -> Option<&[f64]> {
        self.sizes.as_deref()
    }

    pub fn sd(&self) -> Option<&[f64]> {
        self.sd.as_deref()
    }

    /// Stratum indices sorted by label.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Sums `f(h)` over all strata in label order.
    pub(crate) fn sum_by(&self, f: impl Fn(usize) -> f64) -> f64 {
        self.order.iter().fold(0.0, |acc, &h| acc + f(h))
    }

    fn check_positive(&self, field: &'static str, values: &[f64]) -> Result<()> {
        for (label, &v) in self.labels.iter().zip(values) {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::NonPositiveParameter {
                    label: label.clone(),
                    field,
                    value: v,
                });
            }
        }
        Ok(())
    }

    fn check_upper_within_sizes(&self) -> Result<()> {
        if let (Some(upper), Some(sizes)) = (&self.upper, &self.sizes) {
            for ((label, &m), &n) in self.labels.iter().zip(upper).zip(sizes) {
                if m > n {
                    return Err(Error::BoundExceedsSize {
                        label: label.clone(),
                        upper: m,
                        size: n,
                    });
                }
            }
        }
        Ok(())
    }
}

fn check_len(field: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            field,
            expected,
            found,
        })
    }
}

fn sorted_order(labels: &[String]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_unstable_by(|&i, &j| labels[i].cmp(&labels[j]));
    order
}
