//! Deterministic synthetic edge weights.

use rand_core::{RngCore, SeedableRng};

use super::{CsrGraph, GraphError, VertexId};

/// Fills every weight slot from a keyed stream: the weight of an edge is a
/// pure function of `(seed, endpoints)`. Keying by the unordered endpoint
/// pair for undirected graphs gives both stored directions of a logical edge
/// identical weights; parallel edges between the same endpoints also share a
/// weight, which keeps the keying well-defined on multigraphs.
pub(super) fn generate(g: &mut CsrGraph, seed: u64, lo: f32, hi: f32) -> Result<(), GraphError> {
    if !(lo >= 0.0 && lo < hi && hi.is_finite()) {
        return Err(GraphError::InvalidWeightRange);
    }
    let directed = g.directed();
    let (offsets, neighbors, weights, reverse) = g.weights_mut();
    fill(offsets, neighbors, weights, seed, lo, hi, directed, false);
    if let Some((in_offsets, in_neighbors, in_weights)) = reverse {
        fill(in_offsets, in_neighbors, in_weights, seed, lo, hi, directed, true);
    }
    g.set_weighted(true);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn fill(
    offsets: &[u64],
    neighbors: &[VertexId],
    weights: &mut [f32],
    seed: u64,
    lo: f32,
    hi: f32,
    directed: bool,
    transposed: bool,
) {
    let n = offsets.len() - 1;
    for v in 0..n {
        for i in offsets[v] as usize..offsets[v + 1] as usize {
            let u = neighbors[i];
            // Key by the true edge direction; the reverse arrays store the
            // edge (u -> v) at v's in-slot.
            let (a, b) = if transposed { (u, v as u32) } else { (v as u32, u) };
            let (a, b) = if directed {
                (a, b)
            } else {
                (a.min(b), a.max(b))
            };
            weights[i] = sample(seed, a, b, lo, hi);
        }
    }
}

fn sample(seed: u64, a: u32, b: u32, lo: f32, hi: f32) -> f32 {
    let key = splitmix(seed ^ ((u64::from(a) << 32) | u64::from(b)));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(key);
    // 24 high bits give an unbiased f32 in [0, 1).
    let unit = (rng.next_u32() >> 8) as f32 / (1u32 << 24) as f32;
    lo + (hi - lo) * unit
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}
