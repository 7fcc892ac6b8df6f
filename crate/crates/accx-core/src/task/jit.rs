//! The just-in-time controller: online filter first, ballot on overflow.

use alloc::vec::Vec;

use super::ballot::ballot_filter;
use super::bin::ThreadBin;
use super::concat::concat_bins;
use super::lists::{ActiveLists, Separators};
use crate::graph::VertexId;

/// Which mechanism produced an iteration's frontier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    /// Prefix-scan concatenation of the per-worker bins.
    Online,
    /// Contiguous flag scan; selected when any bin overflowed.
    Ballot,
    /// Dense-frontier iteration that reused the full vertex list.
    Reuse,
    /// Baseline path that materializes the active edge buffer.
    Batch,
}

impl core::fmt::Display for FilterKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            FilterKind::Online => "online",
            FilterKind::Ballot => "ballot",
            FilterKind::Reuse => "reuse",
            FilterKind::Batch => "batch",
        })
    }
}

/// One line of the controller's per-iteration audit trail.
#[derive(Debug, Clone, Copy)]
pub struct JitTraceRow {
    pub iteration: u32,
    pub filter: FilterKind,
    pub small: usize,
    pub medium: usize,
    pub large: usize,
    pub overflowed: bool,
}

/// Chooses online or ballot each iteration. The online filter always runs
/// (capped at the threshold per bin, so its shadow cost is bounded while in
/// ballot mode); whichever iteration overflows a bin is routed to the ballot
/// scan instead.
#[derive(Debug, Clone)]
pub struct JitController {
    mode: FilterKind,
    threshold: usize,
    trace: Vec<JitTraceRow>,
}

impl JitController {
    pub fn new(threshold: usize) -> Self {
        JitController {
            mode: FilterKind::Online,
            threshold,
            trace: Vec::new(),
        }
    }

    /// Current filter mode; ballot exactly when the last decided iteration
    /// overflowed a bin.
    pub fn mode(&self) -> FilterKind {
        self.mode
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn trace(&self) -> &[JitTraceRow] {
        &self.trace
    }

    /// Decides the filter for one completed iteration, builds the next active
    /// lists, appends a trace row, and resets the bins for reuse.
    pub fn step(
        &mut self,
        iteration: u32,
        bins: &mut [ThreadBin],
        flags: &[bool],
        degree_of: impl Fn(VertexId) -> usize,
        workers: usize,
        seps: Separators,
    ) -> ActiveLists {
        let overflowed = bins.iter().any(|b| b.overflowed());
        let lists = if overflowed {
            self.mode = FilterKind::Ballot;
            ballot_filter(flags, degree_of, workers, seps)
        } else {
            self.mode = FilterKind::Online;
            concat_bins(bins, degree_of, seps)
                .expect("no bin overflowed on the online path")
        };
        self.trace.push(JitTraceRow {
            iteration,
            filter: self.mode,
            small: lists.small.len(),
            medium: lists.medium.len(),
            large: lists.large.len(),
            overflowed,
        });
        for bin in bins.iter_mut() {
            bin.reset();
        }
        lists
    }

    /// Records an iteration whose frontier came from outside the two filters
    /// (dense-frontier reuse or the batch baseline).
    pub fn note(
        &mut self,
        iteration: u32,
        filter: FilterKind,
        lists: &ActiveLists,
        overflowed: bool,
    ) {
        self.trace.push(JitTraceRow {
            iteration,
            filter,
            small: lists.small.len(),
            medium: lists.medium.len(),
            large: lists.large.len(),
            overflowed,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags_of(set: &[u32], n: usize) -> Vec<bool> {
        let mut f = alloc::vec![false; n];
        for &v in set {
            f[v as usize] = true;
        }
        f
    }

    #[test]
    fn online_path_when_no_overflow() {
        let mut ctl = JitController::new(64);
        let mut bins = alloc::vec![ThreadBin::new(0, 64), ThreadBin::new(1, 64)];
        bins[0].record(4);
        bins[0].record(2);
        let flags = flags_of(&[2, 4], 10);
        let lists = ctl.step(1, &mut bins, &flags, |_| 1, 2, Separators::default());
        assert_eq!(ctl.mode(), FilterKind::Online);
        assert_eq!(lists.small, vec![4, 2]);
        assert!(bins.iter().all(|b| b.is_empty()), "bins reset after the step");
        assert!(!ctl.trace()[0].overflowed);
    }

    #[test]
    fn ballot_path_on_overflow_is_sorted_unique() {
        let mut ctl = JitController::new(2);
        let mut bins = alloc::vec![ThreadBin::new(0, 2)];
        for v in [9u32, 7, 7, 3] {
            bins[0].record(v);
        }
        assert!(bins[0].overflowed());
        // Flags carry the complete truth, including what the bin dropped.
        let flags = flags_of(&[3, 7, 9], 12);
        let lists = ctl.step(1, &mut bins, &flags, |_| 1, 3, Separators::default());
        assert_eq!(ctl.mode(), FilterKind::Ballot);
        assert_eq!(lists.small, vec![3, 7, 9]);
        assert!(ctl.trace()[0].overflowed);
    }

    #[test]
    fn mode_tracks_overflow_per_iteration() {
        let mut ctl = JitController::new(1);
        let mut bins = alloc::vec![ThreadBin::new(0, 1)];
        // Iteration 1: overflow -> ballot.
        bins[0].record(0);
        bins[0].record(1);
        let flags = flags_of(&[0, 1], 4);
        ctl.step(1, &mut bins, &flags, |_| 1, 1, Separators::default());
        assert_eq!(ctl.mode(), FilterKind::Ballot);
        // Iteration 2: fits -> back to online.
        bins[0].record(2);
        let flags = flags_of(&[2], 4);
        ctl.step(2, &mut bins, &flags, |_| 1, 1, Separators::default());
        assert_eq!(ctl.mode(), FilterKind::Online);
        let kinds: Vec<FilterKind> = ctl.trace().iter().map(|r| r.filter).collect();
        assert_eq!(kinds, vec![FilterKind::Ballot, FilterKind::Online]);
    }
}
