//! Degree-classified active lists.

use alloc::vec::Vec;

use crate::graph::VertexId;

/// Degree thresholds separating the three task classes. The defaults mirror
/// warp and block widths: 32 and 128.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Separators {
    /// Degrees strictly below this are small tasks.
    pub small_max: u32,
    /// Degrees at or above this are large tasks; the band between is medium.
    pub large_min: u32,
}

impl Default for Separators {
    fn default() -> Self {
        Separators { small_max: 32, large_min: 128 }
    }
}

impl Separators {
    pub fn new(small_max: u32, large_min: u32) -> Self {
        assert!(small_max < large_min, "separators must be strictly increasing");
        Separators { small_max, large_min }
    }

    /// Exact partition: small iff `degree < small_max`, large iff
    /// `degree >= large_min`, medium otherwise. A degree equal to a separator
    /// belongs to the class above it.
    pub fn classify(&self, degree: usize) -> DegreeClass {
        if degree < self.small_max as usize {
            DegreeClass::Small
        } else if degree < self.large_min as usize {
            DegreeClass::Medium
        } else {
            DegreeClass::Large
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeClass {
    Small,
    Medium,
    Large,
}

/// The frontier for one iteration, split by task granularity, with running
/// total degree per class for direction selection and load accounting.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ActiveLists {
    pub small: Vec<VertexId>,
    pub medium: Vec<VertexId>,
    pub large: Vec<VertexId>,
    pub small_degree: u64,
    pub medium_degree: u64,
    pub large_degree: u64,
}

impl ActiveLists {
    pub fn new() -> Self {
        ActiveLists::default()
    }

    pub fn push(&mut self, v: VertexId, degree: usize, seps: Separators) {
        match seps.classify(degree) {
            DegreeClass::Small => {
                self.small.push(v);
                self.small_degree += degree as u64;
            }
            DegreeClass::Medium => {
                self.medium.push(v);
                self.medium_degree += degree as u64;
            }
            DegreeClass::Large => {
                self.large.push(v);
                self.large_degree += degree as u64;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.small.len() + self.medium.len() + self.large.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sum of out-degrees across all member vertices.
    pub fn total_degree(&self) -> u64 {
        self.small_degree + self.medium_degree + self.large_degree
    }

    /// Entries in list order: small, then medium, then large.
    pub fn iter_all(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.small
            .iter()
            .chain(self.medium.iter())
            .chain(self.large.iter())
            .copied()
    }

    /// Appends another set of lists, preserving per-class order.
    pub fn extend(&mut self, other: &ActiveLists) {
        self.small.extend_from_slice(&other.small);
        self.medium.extend_from_slice(&other.medium);
        self.large.extend_from_slice(&other.large);
        self.small_degree += other.small_degree;
        self.medium_degree += other.medium_degree;
        self.large_degree += other.large_degree;
    }

    /// Storage footprint in 4-byte words, for the memory accounting in run
    /// stats.
    pub fn words(&self) -> u64 {
        self.len() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_classification() {
        let s = Separators::default();
        assert_eq!(s.classify(0), DegreeClass::Small);
        assert_eq!(s.classify(31), DegreeClass::Small);
        assert_eq!(s.classify(32), DegreeClass::Medium);
        assert_eq!(s.classify(127), DegreeClass::Medium);
        assert_eq!(s.classify(128), DegreeClass::Large);
        assert_eq!(s.classify(100_000), DegreeClass::Large);
    }

    #[test]
    fn custom_separators() {
        let s = Separators::new(4, 2048);
        assert_eq!(s.classify(3), DegreeClass::Small);
        assert_eq!(s.classify(4), DegreeClass::Medium);
        assert_eq!(s.classify(2047), DegreeClass::Medium);
        assert_eq!(s.classify(2048), DegreeClass::Large);
    }

    #[test]
    #[should_panic]
    fn separators_must_increase() {
        Separators::new(128, 32);
    }

    #[test]
    fn push_tracks_degree_totals() {
        let s = Separators::default();
        let mut lists = ActiveLists::new();
        lists.push(0, 5, s);
        lists.push(1, 40, s);
        lists.push(2, 500, s);
        assert_eq!(lists.small, vec![0]);
        assert_eq!(lists.medium, vec![1]);
        assert_eq!(lists.large, vec![2]);
        assert_eq!(lists.total_degree(), 545);
        assert_eq!(lists.len(), 3);
    }
}
