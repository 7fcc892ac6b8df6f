//! Sequential reference implementations.
//!
//! Textbook single-context algorithms, deliberately independent of the
//! engine's scheduling, filtering, and combining machinery. The CLI's
//! `--verify` mode and the test suites compare engine output against these.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::graph::{CsrGraph, VertexId};

use super::bfs::UNVISITED;
use super::kcore::{KCoreMeta, ALIVE};

/// Queue-based breadth-first search.
pub fn bfs(graph: &CsrGraph, source: VertexId) -> Vec<u32> {
    let n = graph.vertex_count() as usize;
    let mut level = vec![UNVISITED; n];
    level[source as usize] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = level[v as usize] + 1;
        for (u, _) in graph.out_edges(v) {
            if level[u as usize] == UNVISITED {
                level[u as usize] = next;
                queue.push_back(u);
            }
        }
    }
    level
}

/// Binary-heap Dijkstra. Distances are non-negative, so their IEEE bit
/// patterns order correctly as unsigned integers.
pub fn dijkstra(graph: &CsrGraph, source: VertexId) -> Vec<f64> {
    let n = graph.vertex_count() as usize;
    let mut dist = vec![f64::INFINITY; n];
    dist[source as usize] = 0.0;
    let mut heap: BinaryHeap<Reverse<(u64, VertexId)>> = BinaryHeap::new();
    heap.push(Reverse((0, source)));
    while let Some(Reverse((d_bits, v))) = heap.pop() {
        let d = f64::from_bits(d_bits);
        if d > dist[v as usize] {
            continue;
        }
        for (u, w) in graph.out_edges(v) {
            let candidate = d + f64::from(w);
            if candidate < dist[u as usize] {
                dist[u as usize] = candidate;
                heap.push(Reverse((candidate.to_bits(), u)));
            }
        }
    }
    dist
}

/// Iterative peeling with a deletion queue. Returns the same shape the
/// engine produces: remaining-degree counters frozen at deletion time and a
/// liveness stamp (the stamp value itself is `0` for every deleted vertex
/// here; only aliveness is order-independent).
pub fn kcore_peel(graph: &CsrGraph, k: u32) -> Vec<KCoreMeta> {
    let n = graph.vertex_count() as usize;
    let mut counter: Vec<u32> = (0..graph.vertex_count())
        .map(|v| graph.out_degree(v) as u32)
        .collect();
    let mut alive = vec![true; n];
    let mut queue: VecDeque<VertexId> = (0..graph.vertex_count())
        .filter(|&v| counter[v as usize] < k)
        .collect();
    for &v in &queue {
        alive[v as usize] = false;
    }
    while let Some(v) = queue.pop_front() {
        for (u, _) in graph.out_edges(v) {
            if alive[u as usize] {
                counter[u as usize] -= 1;
                if counter[u as usize] < k {
                    alive[u as usize] = false;
                    queue.push_back(u);
                }
            }
        }
    }
    (0..n)
        .map(|v| KCoreMeta {
            counter: counter[v],
            died_at: if alive[v] { ALIVE } else { 0 },
        })
        .collect()
}

/// Double-buffered power iteration of the damped rank recurrence, run until
/// one sweep's total L1 change falls below `epsilon_total`.
pub fn pagerank(graph: &CsrGraph, damping: f64, epsilon_total: f64, max_iter: u32) -> Vec<f64> {
    let n = graph.vertex_count() as usize;
    let inv: Vec<f64> = (0..graph.vertex_count())
        .map(|v| {
            let d = graph.out_degree(v);
            if d == 0 {
                0.0
            } else {
                1.0 / d as f64
            }
        })
        .collect();
    let mut rank = vec![1.0f64; n];
    let mut next = vec![0.0f64; n];
    for _ in 0..max_iter {
        let mut l1 = 0.0;
        for u in 0..graph.vertex_count() {
            let mut sum = 0.0;
            for (v, _) in graph.in_edges(u).expect("reference pagerank needs the in-view") {
                sum += rank[v as usize] * inv[v as usize];
            }
            let fresh = (1.0 - damping) + damping * sum;
            let d = fresh - rank[u as usize];
            l1 += if d < 0.0 { -d } else { d };
            next[u as usize] = fresh;
        }
        rank.copy_from_slice(&next);
        if l1 < epsilon_total {
            break;
        }
    }
    rank
}

/// Sequential fixed-iteration belief propagation with the same blend
/// recurrence the engine spec uses, double-buffered.
pub fn belief_propagation(graph: &CsrGraph, priors: &[f64], iterations: u32) -> Vec<f64> {
    let n = graph.vertex_count() as usize;
    assert_eq!(priors.len(), n);
    let mut belief = priors.to_vec();
    let mut next = vec![0.0f64; n];
    for _ in 0..iterations {
        for u in 0..graph.vertex_count() {
            let mut mass = 0.0;
            let mut weight = 0.0;
            for (v, w) in graph.in_edges(u).expect("reference bp needs the in-view") {
                mass += f64::from(w) * belief[v as usize];
                weight += f64::from(w);
            }
            next[u as usize] = (priors[u as usize] + mass) / (1.0 + weight);
        }
        belief.copy_from_slice(&next);
    }
    belief
}
