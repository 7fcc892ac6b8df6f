//! Desk-scale synthetic graph generators.

use alloc::vec::Vec;
use rand_core::{RngCore, SeedableRng};

use super::{Edge, EdgeList};

/// R-MAT quadrant probabilities. The conventional skewed setting is
/// `a = 0.57, b = 0.19, c = 0.19` with `d` taking the remainder.
#[derive(Debug, Clone, Copy)]
pub struct RmatParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Default for RmatParams {
    fn default() -> Self {
        RmatParams { a: 0.57, b: 0.19, c: 0.19 }
    }
}

/// Generates an R-MAT edge list with `1 << scale` vertices and
/// `avg_degree << scale` edges. Duplicate edges and self-loops are kept,
/// matching the raw generator output.
pub fn rmat_edge_list(
    scale: u32,
    avg_degree: u32,
    params: RmatParams,
    seed: u64,
    directed: bool,
) -> EdgeList {
    assert!(scale < 31, "scale must keep vertex ids in 32 bits");
    let n = 1u64 << scale;
    let m = n * u64::from(avg_degree);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let (mut src, mut dst) = (0u32, 0u32);
        for _ in 0..scale {
            src <<= 1;
            dst <<= 1;
            let r = unit(&mut rng);
            if r < params.a {
                // top-left quadrant: no bits set
            } else if r < params.a + params.b {
                dst |= 1;
            } else if r < params.a + params.b + params.c {
                src |= 1;
            } else {
                src |= 1;
                dst |= 1;
            }
        }
        edges.push(Edge { src, dst, weight: None });
    }
    EdgeList::new(directed, edges)
        .with_vertex_count(n as u32)
        .expect("generator endpoints are below n by construction")
}

/// Generates `edge_count` uniformly random endpoint pairs over
/// `vertex_count` vertices.
pub fn uniform_edge_list(
    vertex_count: u32,
    edge_count: u64,
    seed: u64,
    directed: bool,
) -> EdgeList {
    assert!(vertex_count > 0, "need at least one vertex");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(edge_count as usize);
    for _ in 0..edge_count {
        let src = bounded(&mut rng, vertex_count);
        let dst = bounded(&mut rng, vertex_count);
        edges.push(Edge { src, dst, weight: None });
    }
    EdgeList::new(directed, edges)
        .with_vertex_count(vertex_count)
        .expect("endpoints below vertex_count by construction")
}

fn unit(rng: &mut impl RngCore) -> f64 {
    // 53 high bits give an unbiased f64 in [0, 1).
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn bounded(rng: &mut impl RngCore, bound: u32) -> u32 {
    // Multiply-shift range reduction; bias is negligible at desk scale.
    ((u64::from(rng.next_u32()) * u64::from(bound)) >> 32) as u32
}
