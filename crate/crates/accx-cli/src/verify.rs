//! Oracle verification: re-run the sequential reference and report the first
//! divergent vertex.

use accx_core::algorithms::{reference, BpMeta, KCoreMeta, PrMeta};
use accx_core::graph::CsrGraph;

pub struct VerifyOutcome {
    pub pass: bool,
    pub detail: String,
}

impl VerifyOutcome {
    fn pass(detail: String) -> Self {
        VerifyOutcome { pass: true, detail }
    }

    fn fail(detail: String) -> Self {
        VerifyOutcome { pass: false, detail }
    }
}

pub fn verify_bfs(graph: &CsrGraph, source: u32, levels: &[u32]) -> VerifyOutcome {
    let oracle = reference::bfs(graph, source);
    match first_divergence(levels.iter(), oracle.iter()) {
        None => VerifyOutcome::pass("levels equal queue-based reference".into()),
        Some(v) => VerifyOutcome::fail(format!(
            "vertex {v}: engine level {} vs reference {}",
            levels[v], oracle[v]
        )),
    }
}

pub fn verify_sssp(graph: &CsrGraph, source: u32, dist: &[f64]) -> VerifyOutcome {
    let oracle = reference::dijkstra(graph, source);
    match first_divergence(
        dist.iter().map(|d| d.to_bits()),
        oracle.iter().map(|d| d.to_bits()),
    ) {
        None => VerifyOutcome::pass("distances equal binary-heap Dijkstra".into()),
        Some(v) => VerifyOutcome::fail(format!(
            "vertex {v}: engine distance {} vs reference {}",
            dist[v], oracle[v]
        )),
    }
}

pub fn verify_kcore(graph: &CsrGraph, k: u32, meta: &[KCoreMeta]) -> VerifyOutcome {
    let oracle = reference::kcore_peel(graph, k);
    for (v, (m, o)) in meta.iter().zip(oracle.iter()).enumerate() {
        if m.alive() != o.alive() {
            return VerifyOutcome::fail(format!(
                "vertex {v}: engine alive={} vs peeling oracle alive={}",
                m.alive(),
                o.alive()
            ));
        }
        if m.alive() && m.counter != o.counter {
            return VerifyOutcome::fail(format!(
                "vertex {v}: core-degree counter {} vs oracle {}",
                m.counter, o.counter
            ));
        }
    }
    VerifyOutcome::pass("alive set and core degrees equal the peeling oracle".into())
}

pub fn verify_pagerank(
    graph: &CsrGraph,
    damping: f64,
    epsilon: f64,
    meta: &[PrMeta],
) -> VerifyOutcome {
    let n = f64::from(graph.vertex_count());
    // Run the reference an order tighter than the engine's stop threshold so
    // the comparison is dominated by the engine's own error.
    let oracle = reference::pagerank(graph, damping, epsilon * n * 0.1, 100_000);
    let l1: f64 = meta
        .iter()
        .zip(oracle.iter())
        .map(|(m, o)| (m.rank - o).abs())
        .sum();
    let tolerance = 10.0 * epsilon * n;
    if l1 <= tolerance {
        VerifyOutcome::pass(format!(
            "L1 distance to sequential power iteration {l1:.3e} (tolerance {tolerance:.3e})"
        ))
    } else {
        let v = meta
            .iter()
            .zip(oracle.iter())
            .enumerate()
            .max_by(|a, b| {
                let da = (a.1 .0.rank - a.1 .1).abs();
                let db = (b.1 .0.rank - b.1 .1).abs();
                da.partial_cmp(&db).unwrap()
            })
            .map(|(v, _)| v)
            .unwrap_or(0);
        VerifyOutcome::fail(format!(
            "L1 {l1:.3e} exceeds {tolerance:.3e}; worst vertex {v}: {} vs {}",
            meta[v].rank, oracle[v]
        ))
    }
}

pub fn verify_bp(
    graph: &CsrGraph,
    priors: &[f64],
    iterations: u32,
    deterministic: bool,
    meta: &[BpMeta],
) -> VerifyOutcome {
    let oracle = reference::belief_propagation(graph, priors, iterations);
    let tolerance = if deterministic { 1e-12 } else { 1e-9 };
    for (v, (m, o)) in meta.iter().zip(oracle.iter()).enumerate() {
        if (m.belief - o).abs() > tolerance {
            return VerifyOutcome::fail(format!(
                "vertex {v}: belief {} vs sequential reference {o} (tolerance {tolerance:e})",
                m.belief
            ));
        }
    }
    VerifyOutcome::pass(format!(
        "beliefs within {tolerance:e} of the sequential message-passing reference"
    ))
}

fn first_divergence<T: PartialEq>(
    a: impl Iterator<Item = T>,
    b: impl Iterator<Item = T>,
) -> Option<usize> {
    a.zip(b).position(|(x, y)| x != y)
}
