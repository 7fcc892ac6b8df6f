//! Granularity-matched task scheduling.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::graph::{CsrGraph, VertexId};
use crate::task::ActiveLists;

/// A contiguous slice of one vertex's out-edge range, identified by global
/// edge indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaskChunk {
    pub vertex: VertexId,
    pub edge_start: usize,
    pub edge_end: usize,
}

impl TaskChunk {
    pub fn edge_count(&self) -> usize {
        self.edge_end - self.edge_start
    }
}

/// Per-worker chunk assignment with the resulting edge loads.
#[derive(Debug, Clone)]
pub struct WorkerAssignment {
    pub chunks: Vec<Vec<TaskChunk>>,
    pub edge_loads: Vec<u64>,
}

impl WorkerAssignment {
    /// Largest worker load divided by the mean load; 1.0 is perfect balance.
    pub fn max_over_mean(&self) -> f64 {
        let total: u64 = self.edge_loads.iter().sum();
        if total == 0 {
            return 1.0;
        }
        let mean = total as f64 / self.edge_loads.len() as f64;
        let max = *self.edge_loads.iter().max().unwrap() as f64;
        max / mean
    }
}

/// Splits the frontier into work chunks (small vertices whole, medium
/// vertices in slices of the small separator, large vertices in slices of
/// the large separator) and hands each chunk to the least-loaded worker,
/// largest grains first. Greedy placement onto the
/// least-loaded worker keeps every load within one maximal chunk of the
/// mean.
pub fn schedule_tasks(
    lists: &ActiveLists,
    graph: &CsrGraph,
    worker_count: usize,
    small_grain: u32,
    large_grain: u32,
) -> WorkerAssignment {
    assert!(worker_count >= 1);
    let mut chunks: Vec<Vec<TaskChunk>> = (0..worker_count).map(|_| Vec::new()).collect();
    // Min-heap keyed by (load, worker id): deterministic tie-breaking.
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> =
        (0..worker_count).map(|w| Reverse((0u64, w))).collect();

    let mut place = |chunk: TaskChunk, heap: &mut BinaryHeap<Reverse<(u64, usize)>>| {
        let Reverse((load, w)) = heap.pop().unwrap();
        chunks[w].push(chunk);
        heap.push(Reverse((load + chunk.edge_count() as u64, w)));
    };

    for (list, grain) in [
        (&lists.large, large_grain as usize),
        (&lists.medium, small_grain as usize),
    ] {
        for &v in list.iter() {
            let range = graph.out_range(v);
            let mut at = range.start;
            while at < range.end {
                let end = (at + grain).min(range.end);
                place(TaskChunk { vertex: v, edge_start: at, edge_end: end }, &mut heap);
                at = end;
            }
        }
    }
    for &v in &lists.small {
        let range = graph.out_range(v);
        place(
            TaskChunk { vertex: v, edge_start: range.start, edge_end: range.end },
            &mut heap,
        );
    }

    let mut edge_loads = alloc::vec![0u64; worker_count];
    for (w, worker_chunks) in chunks.iter().enumerate() {
        edge_loads[w] = worker_chunks.iter().map(|c| c.edge_count() as u64).sum();
    }
    WorkerAssignment { chunks, edge_loads }
}
