//! Per-run and per-iteration execution records.

use alloc::vec::Vec;

use crate::acc::Direction;
use crate::task::FilterKind;

/// One superstep's record. List sizes and the filter describe the frontier
/// *produced at the end of* this iteration (the JIT decision for iteration
/// `t` reflects iteration `t`'s recording, per the controller contract);
/// `scheduled`/`frontier_degree` describe the frontier that was processed.
#[derive(Debug, Clone)]
pub struct IterationStats {
    pub iteration: u32,
    pub direction: Direction,
    pub filter: FilterKind,
    pub small: usize,
    pub medium: usize,
    pub large: usize,
    /// Vertices processed after deduplication and bucket gating.
    pub scheduled: usize,
    /// Vertices pushed past this superstep by the priority gate.
    pub deferred: usize,
    /// Sum of out-degrees of the processed frontier.
    pub frontier_degree: u64,
    pub edges_examined: u64,
    /// Vertices whose apply reported a change.
    pub updated: usize,
    /// Sum of |delta| over applied vertices, folded in ascending vertex
    /// order so the value is identical for every worker count.
    pub l1_delta: f64,
    /// Whether any recording bin overflowed during this iteration.
    pub overflowed: bool,
    /// Frontier-management footprint this iteration, in 4-byte words:
    /// lists + bins + deferred + flags (+ the batch edge buffer).
    pub frontier_words: u64,
    pub wall_ns: u64,
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    FrontierEmpty,
    ConvergenceTest,
    MaxIterations,
}

/// Whole-run record.
#[derive(Debug, Clone)]
pub struct RunStats {
    pub iterations: Vec<IterationStats>,
    pub stop: StopReason,
    /// False only when the run hit the iteration cap.
    pub converged: bool,
    pub total_edges_examined: u64,
    /// Peak frontier-management footprint across iterations, in words.
    pub frontier_words_highwater: u64,
    /// The batch baseline's buffer budget, in words (two words per edge);
    /// the reference value for memory comparisons.
    pub batch_buffer_bound_words: u64,
    pub total_wall_ns: u64,
}

impl RunStats {
    pub fn iteration_count(&self) -> u32 {
        self.iterations.len() as u32
    }

    /// Per-iteration direction sequence, the input to fusion planning.
    pub fn direction_trace(&self) -> Vec<Direction> {
        self.iterations.iter().map(|row| row.direction).collect()
    }
}
