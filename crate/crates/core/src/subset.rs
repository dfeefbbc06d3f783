use crate::error::{Error, Result};
use crate::frame::StrataFrame;

/// A set of strata, stored as a membership mask over frame indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    mask: Vec<bool>,
    count: usize,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Subset {
            mask: vec![false; universe],
            count: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        Subset {
            mask: vec![true; universe],
            count: universe,
        }
    }

    /// Indices outside `0..universe` are ignored.
    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Subset::empty(universe);
        for h in indices {
            if h < universe {
                set.insert(h);
            }
        }
        set
    }

    /// Bit `k` of `bits` selects the k-th stratum in label order.
    pub(crate) fn from_label_bits(frame: &StrataFrame, bits: u64) -> Self {
        let order = frame.order();
        Subset::from_indices(
            order.len(),
            (0..order.len())
                .filter(|k| bits >> k & 1 == 1)
                .map(|k| order[k]),
        )
    }

    pub fn from_labels<S: AsRef<str>>(
        frame: &StrataFrame,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let mut set = Subset::empty(frame.len());
        for label in labels {
            let label = label.as_ref();
            let h = frame.index_of(label).ok_or_else(|| Error::UnknownLabel {
                label: label.to_owned(),
            })?;
            set.insert(h);
        }
        Ok(set)
    }

    pub fn insert(&mut self, h: usize) {
        if !self.mask[h] {
            self.mask[h] = true;
            self.count += 1;
        }
    }

    pub fn remove(&mut self, h: usize) {
        if self.mask[h] {
            self.mask[h] = false;
            self.count -= 1;
        }
    }

    pub fn contains(&self, h: usize) -> bool {
        self.mask.get(h).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Number of strata in the frame this set ranges over.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn is_full(&self) -> bool {
        self.count == self.mask.len()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.universe() == other.universe()
            && self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    /// Member indices in ascending index order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(h, &inside)| inside.then_some(h))
    }

    /// Member labels in label order.
    pub fn labels<'f>(&self, frame: &'f StrataFrame) -> Vec<&'f str> {
        frame
            .order()
            .iter()
            .filter(|&&h| self.contains(h))
            .map(|&h| frame.label(h))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_bookkeeping() {
        let mut set = Subset::empty(4);
        set.insert(2);
        set.insert(2);
        set.insert(0);
        assert_eq!(set.len(), 2);
        assert_eq!(set.indices().collect::<Vec<_>>(), vec![0, 2]);
        set.remove(0);
        assert!(!set.contains(0));
        assert!(set.is_subset(&Subset::full(4)));
        assert!(!Subset::full(4).is_subset(&set));
    }

    #[test]
    fn labels_resolve_through_frame() {
        let frame =
            StrataFrame::new(vec!["b".into(), "a".into()], vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        let set = Subset::from_labels(&frame, ["b", "a"]).unwrap();
        assert!(set.is_full());
        assert_eq!(set.labels(&frame), vec!["a", "b"]);
        assert!(Subset::from_labels(&frame, ["x"]).is_err());
    }
}
