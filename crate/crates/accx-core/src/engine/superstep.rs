//! Superstep internals.
//!
//! Push supersteps run in two parallel phases separated by a barrier:
//! workers first fold edge updates into worker-private partials (no shared
//! writes), then workers owning disjoint contiguous vertex ranges merge the
//! partials per destination and apply exactly once per touched vertex. Pull
//! supersteps are one phase: each range owner gathers over its vertices'
//! in-edges against an immutable snapshot. No step ever needs an atomic
//! read-modify-write.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Range;

use super::executor::Executor;
use super::schedule::{TaskChunk, WorkerAssignment};
use crate::acc::{Algorithm, CombineClass, Ctx};
use crate::graph::{CsrGraph, VertexId};
use crate::task::ThreadBin;

pub(crate) fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// Worker-private compute output. The default path folds immediately into a
/// map keyed by destination; deterministic mode keeps raw
/// `(dst, edge-id, update)` triples instead, sorted so the apply phase can
/// fold every destination's updates in ascending source order (edge ids
/// increase with source id within a destination group).
pub(super) struct ComputePartial<U> {
    map: BTreeMap<VertexId, U>,
    triples: Vec<(VertexId, u64, U)>,
}

pub(super) struct ComputeOut<U> {
    partials: Vec<ComputePartial<U>>,
    pub edges: u64,
}

struct ComputeState<U> {
    chunks: Vec<TaskChunk>,
    partial: ComputePartial<U>,
    edges: u64,
}

fn fold_into<A: Algorithm>(
    spec: &A,
    partial: &mut ComputePartial<A::Update>,
    deterministic: bool,
    dst: VertexId,
    edge_id: u64,
    update: A::Update,
) {
    if deterministic {
        partial.triples.push((dst, edge_id, update));
    } else {
        match partial.map.entry(dst) {
            Entry::Occupied(mut o) => {
                let cur = o.get().clone();
                *o.get_mut() = spec.combine(cur, update);
            }
            Entry::Vacant(v) => {
                v.insert(update);
            }
        }
    }
}

/// Push compute phase over scheduled task chunks.
pub(super) fn push_compute<A: Algorithm, E: Executor>(
    exec: &E,
    graph: &CsrGraph,
    spec: &A,
    ctx: Ctx,
    metadata: &[A::Vertex],
    assignment: WorkerAssignment,
    deterministic: bool,
) -> ComputeOut<A::Update> {
    let mut states: Vec<ComputeState<A::Update>> = assignment
        .chunks
        .into_iter()
        .map(|chunks| ComputeState {
            chunks,
            partial: ComputePartial { map: BTreeMap::new(), triples: Vec::new() },
            edges: 0,
        })
        .collect();

    exec.scope(&mut states, |_w, st| {
        for chunk in core::mem::take(&mut st.chunks) {
            let mv = &metadata[chunk.vertex as usize];
            for e in chunk.edge_start..chunk.edge_end {
                let (dst, w) = graph.out_edge(e);
                st.edges += 1;
                if let Some(update) = spec.compute(ctx, mv, w, &metadata[dst as usize]) {
                    fold_into(spec, &mut st.partial, deterministic, dst, e as u64, update);
                }
            }
        }
        if deterministic {
            st.partial.triples.sort_unstable_by_key(|a| (a.0, a.1));
        }
    });

    let edges = states.iter().map(|s| s.edges).sum();
    ComputeOut {
        partials: states.into_iter().map(|s| s.partial).collect(),
        edges,
    }
}

struct BufferComputeState<U> {
    range: Range<usize>,
    partial: ComputePartial<U>,
    edges: u64,
}

/// Batch compute phase over a materialized `(source, edge-id)` buffer, split
/// into contiguous per-worker slices.
#[allow(clippy::too_many_arguments)]
pub(super) fn batch_compute<A: Algorithm, E: Executor>(
    exec: &E,
    graph: &CsrGraph,
    spec: &A,
    ctx: Ctx,
    metadata: &[A::Vertex],
    buffer: &[(VertexId, u64)],
    workers: usize,
    deterministic: bool,
) -> ComputeOut<A::Update> {
    let chunk = (buffer.len() + workers - 1) / workers.max(1);
    let mut states: Vec<BufferComputeState<A::Update>> = (0..workers)
        .map(|w| {
            let start = (w * chunk.max(1)).min(buffer.len());
            let end = ((w + 1) * chunk.max(1)).min(buffer.len());
            BufferComputeState {
                range: start..end,
                partial: ComputePartial { map: BTreeMap::new(), triples: Vec::new() },
                edges: 0,
            }
        })
        .collect();

    exec.scope(&mut states, |_w, st| {
        for &(src, edge_id) in &buffer[st.range.clone()] {
            let (dst, w) = graph.out_edge(edge_id as usize);
            st.edges += 1;
            if let Some(update) = spec.compute(ctx, &metadata[src as usize], w, &metadata[dst as usize]) {
                fold_into(spec, &mut st.partial, deterministic, dst, edge_id, update);
            }
        }
        if deterministic {
            st.partial.triples.sort_unstable_by_key(|a| (a.0, a.1));
        }
    });

    let edges = states.iter().map(|s| s.edges).sum();
    ComputeOut {
        partials: states.into_iter().map(|s| s.partial).collect(),
        edges,
    }
}

pub(super) struct ApplyOut {
    pub updated: usize,
    pub l1_delta: f64,
}

struct ApplyState<'a, V> {
    range: Range<u32>,
    meta: &'a mut [V],
    flags: &'a mut [bool],
    bin: &'a mut ThreadBin,
    updated: usize,
    deltas: Vec<f64>,
}

/// Apply phase: every destination with at least one update is folded and
/// applied exactly once, by the worker owning its vertex range. Changed
/// vertices set their flag and are recorded into the owner's bin in
/// ascending order. With `apply_on_empty`, untouched vertices in the range
/// receive the identity update (dense recurrences with a constant term).
#[allow(clippy::too_many_arguments)]
pub(super) fn apply_merged<A: Algorithm, E: Executor>(
    exec: &E,
    spec: &A,
    ctx: Ctx,
    metadata: &mut [A::Vertex],
    flags: &mut [bool],
    bins: &mut [ThreadBin],
    compute: &ComputeOut<A::Update>,
    ranges: &[Range<u32>],
    deterministic: bool,
    apply_on_empty: bool,
) -> ApplyOut {
    let meta_slices = split_by_ranges(metadata, ranges);
    let flag_slices = split_by_ranges(flags, ranges);
    let mut states: Vec<ApplyState<'_, A::Vertex>> = meta_slices
        .into_iter()
        .zip(flag_slices)
        .zip(bins.iter_mut())
        .zip(ranges.iter().cloned())
        .map(|(((meta, flags), bin), range)| ApplyState {
            range,
            meta,
            flags,
            bin,
            updated: 0,
            deltas: Vec::new(),
        })
        .collect();

    let partials = &compute.partials;
    exec.scope(&mut states, |_w, st| {
        let folded = if deterministic {
            fold_range_deterministic(spec, partials, st.range.clone())
        } else {
            fold_range(spec, partials, st.range.clone())
        };

        let start = st.range.start;
        let do_apply = |st: &mut ApplyState<'_, A::Vertex>, dst: VertexId, update: A::Update| {
            let local = (dst - start) as usize;
            let outcome = spec.apply(ctx, &mut st.meta[local], update);
            if outcome.changed {
                st.flags[local] = true;
                st.bin.record(dst);
                st.updated += 1;
                st.deltas.push(fabs(outcome.delta));
            }
        };

        if apply_on_empty {
            let mut pending = folded.into_iter().peekable();
            for v in st.range.clone() {
                let update = match pending.peek() {
                    Some((dst, _)) if *dst == v => pending.next().unwrap().1,
                    _ => spec.identity(),
                };
                do_apply(st, v, update);
            }
        } else {
            for (dst, update) in folded {
                do_apply(st, dst, update);
            }
        }
    });

    // Workers cover ascending disjoint ranges and push deltas in ascending
    // vertex order, so this concatenated fold is a single ascending-order
    // sum: the L1 value is identical for every worker count.
    let mut l1 = 0.0;
    let mut updated = 0;
    for st in &states {
        updated += st.updated;
        for d in &st.deltas {
            l1 += d;
        }
    }
    ApplyOut { updated, l1_delta: l1 }
}

/// Merges one range of every worker's map partials, folding per destination
/// in worker order.
fn fold_range<A: Algorithm>(
    spec: &A,
    partials: &[ComputePartial<A::Update>],
    range: Range<u32>,
) -> Vec<(VertexId, A::Update)> {
    let mut folded: BTreeMap<VertexId, A::Update> = BTreeMap::new();
    for partial in partials {
        for (&dst, update) in partial.map.range(range.clone()) {
            match folded.entry(dst) {
                Entry::Occupied(mut o) => {
                    let cur = o.get().clone();
                    *o.get_mut() = spec.combine(cur, update.clone());
                }
                Entry::Vacant(v) => {
                    v.insert(update.clone());
                }
            }
        }
    }
    folded.into_iter().collect()
}

/// Deterministic merge: gathers every worker's `(dst, edge-id, update)`
/// triples for the range, orders them by `(dst, edge-id)`, and folds the
/// groups; within a destination, edge-id order is ascending source order.
fn fold_range_deterministic<A: Algorithm>(
    spec: &A,
    partials: &[ComputePartial<A::Update>],
    range: Range<u32>,
) -> Vec<(VertexId, A::Update)> {
    let mut merged: Vec<(VertexId, u64, A::Update)> = Vec::new();
    for partial in partials {
        let t = &partial.triples;
        let lo = t.partition_point(|x| x.0 < range.start);
        let hi = t.partition_point(|x| x.0 < range.end);
        merged.extend(t[lo..hi].iter().cloned());
    }
    merged.sort_unstable_by_key(|a| (a.0, a.1));

    let mut out = Vec::new();
    let mut i = 0;
    while i < merged.len() {
        let dst = merged[i].0;
        let mut acc = merged[i].2.clone();
        let mut j = i + 1;
        while j < merged.len() && merged[j].0 == dst {
            acc = spec.combine(acc, merged[j].2.clone());
            j += 1;
        }
        out.push((dst, acc));
        i = j;
    }
    out
}

pub(super) struct PullOut {
    pub edges: u64,
    pub candidates: u64,
    pub updated: usize,
    pub l1_delta: f64,
}

struct PullState<'a, V> {
    range: Range<u32>,
    meta: &'a mut [V],
    flags: &'a mut [bool],
    bin: &'a mut ThreadBin,
    edges: u64,
    candidates: u64,
    updated: usize,
    deltas: Vec<f64>,
}

/// Pull superstep: each range owner walks its candidate vertices, folds
/// `compute` over their in-edges against the snapshot, and applies once.
/// Voting specs stop scanning a vertex at its first satisfying update.
#[allow(clippy::too_many_arguments)]
pub(super) fn pull_superstep<A: Algorithm, E: Executor>(
    exec: &E,
    graph: &CsrGraph,
    spec: &A,
    ctx: Ctx,
    snapshot: &[A::Vertex],
    metadata: &mut [A::Vertex],
    flags: &mut [bool],
    bins: &mut [ThreadBin],
    ranges: &[Range<u32>],
) -> PullOut {
    let voting = spec.combine_class() == CombineClass::Voting;
    let apply_on_empty = spec.pull_apply_on_empty();

    let meta_slices = split_by_ranges(metadata, ranges);
    let flag_slices = split_by_ranges(flags, ranges);
    let mut states: Vec<PullState<'_, A::Vertex>> = meta_slices
        .into_iter()
        .zip(flag_slices)
        .zip(bins.iter_mut())
        .zip(ranges.iter().cloned())
        .map(|(((meta, flags), bin), range)| PullState {
            range,
            meta,
            flags,
            bin,
            edges: 0,
            candidates: 0,
            updated: 0,
            deltas: Vec::new(),
        })
        .collect();

    exec.scope(&mut states, |_w, st| {
        for v in st.range.clone() {
            if !spec.pull_candidate(&snapshot[v as usize]) {
                continue;
            }
            st.candidates += 1;
            let mut acc: Option<A::Update> = None;
            let in_edges = graph
                .in_edges(v)
                .expect("pull requires the in-neighbor view");
            for (src, w) in in_edges {
                st.edges += 1;
                if let Some(update) = spec.compute(ctx, &snapshot[src as usize], w, &snapshot[v as usize]) {
                    acc = Some(match acc.take() {
                        Some(a) => spec.combine(a, update),
                        None => update,
                    });
                    if voting {
                        break;
                    }
                }
            }
            let update = match acc {
                Some(a) => a,
                None if apply_on_empty => spec.identity(),
                None => continue,
            };
            let local = (v - st.range.start) as usize;
            let outcome = spec.apply(ctx, &mut st.meta[local], update);
            if outcome.changed {
                st.flags[local] = true;
                st.bin.record(v);
                st.updated += 1;
                st.deltas.push(fabs(outcome.delta));
            }
        }
    });

    let mut out = PullOut { edges: 0, candidates: 0, updated: 0, l1_delta: 0.0 };
    for st in &states {
        out.edges += st.edges;
        out.candidates += st.candidates;
        out.updated += st.updated;
        for d in &st.deltas {
            out.l1_delta += d;
        }
    }
    out
}

fn split_by_ranges<'a, T>(mut slice: &'a mut [T], ranges: &[Range<u32>]) -> Vec<&'a mut [T]> {
    let mut out = Vec::with_capacity(ranges.len());
    for r in ranges {
        let take = (r.end - r.start) as usize;
        let (head, tail) = slice.split_at_mut(take);
        out.push(head);
        slice = tail;
    }
    out
}
