//! Worker-private recording bins.

use alloc::vec::Vec;

use crate::graph::VertexId;

/// Outcome of an online-filter record attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordOutcome {
    Recorded,
    /// The bin is at capacity; the entry was dropped and the bin is marked
    /// overflowed for the JIT controller to see at the next barrier.
    Overflow,
}

/// A bounded vertex buffer owned by exactly one worker. No synchronization is
/// needed: ownership is exclusive during compute, and the controller reads
/// the bins only after the barrier.
#[derive(Debug, Clone)]
pub struct ThreadBin {
    owner: usize,
    capacity: usize,
    entries: Vec<VertexId>,
    overflowed: bool,
}

impl ThreadBin {
    pub fn new(owner: usize, capacity: usize) -> Self {
        ThreadBin {
            owner,
            capacity,
            entries: Vec::new(),
            overflowed: false,
        }
    }

    /// Records an updated vertex. Duplicates and arbitrary order are
    /// permitted; once the bin overflows, further records are dropped.
    pub fn record(&mut self, v: VertexId) -> RecordOutcome {
        if self.overflowed {
            return RecordOutcome::Overflow;
        }
        if self.entries.len() == self.capacity {
            self.overflowed = true;
            return RecordOutcome::Overflow;
        }
        self.entries.push(v);
        RecordOutcome::Recorded
    }

    pub fn owner(&self) -> usize {
        self.owner
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn entries(&self) -> &[VertexId] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn overflowed(&self) -> bool {
        self.overflowed
    }

    /// Empties the bin for the next iteration.
    pub fn reset(&mut self) {
        self.entries.clear();
        self.overflowed = false;
    }

    #[cfg(test)]
    pub(crate) fn from_entries(owner: usize, capacity: usize, entries: &[VertexId]) -> Self {
        let mut bin = ThreadBin::new(owner, capacity);
        for &v in entries {
            bin.record(v);
        }
        bin
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_in_arrival_order() {
        // Two updates land as {e, c} with e first, exactly as recorded.
        let (e, c) = (4, 2);
        let mut bin = ThreadBin::new(0, 64);
        assert_eq!(bin.record(e), RecordOutcome::Recorded);
        assert_eq!(bin.record(c), RecordOutcome::Recorded);
        assert_eq!(bin.entries(), &[e, c]);
    }

    #[test]
    fn overflow_at_capacity_drops_entry() {
        let mut bin = ThreadBin::new(0, 64);
        for v in 0..64 {
            assert_eq!(bin.record(v), RecordOutcome::Recorded);
        }
        assert!(!bin.overflowed());
        assert_eq!(bin.record(64), RecordOutcome::Overflow);
        assert!(bin.overflowed());
        assert_eq!(bin.len(), 64);
        // Later records stay dropped.
        assert_eq!(bin.record(65), RecordOutcome::Overflow);
        assert_eq!(bin.len(), 64);
    }

    #[test]
    fn duplicates_allowed() {
        let mut bin = ThreadBin::new(0, 8);
        bin.record(3);
        bin.record(3);
        assert_eq!(bin.entries(), &[3, 3]);
    }

    #[test]
    fn reset_clears_overflow() {
        let mut bin = ThreadBin::new(0, 1);
        bin.record(0);
        bin.record(1);
        assert!(bin.overflowed());
        bin.reset();
        assert!(!bin.overflowed());
        assert!(bin.is_empty());
    }
}
