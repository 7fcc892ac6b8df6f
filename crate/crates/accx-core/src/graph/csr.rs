//! Compressed-sparse-row storage with optional reverse (in-neighbor) arrays.

use alloc::vec;
use alloc::vec::Vec;

use super::{EdgeList, GraphError, VertexId};

/// Default weight attached to unweighted edges so weighted algorithms can run
/// on any input.
pub const DEFAULT_WEIGHT: f32 = 1.0;

/// Mutable weight-slot view: forward arrays plus the optional reverse
/// arrays, as (offsets, neighbors, weights) triples.
pub(crate) type WeightSlots<'a> = (
    &'a [u64],
    &'a [VertexId],
    &'a mut Vec<f32>,
    Option<(&'a [u64], &'a [VertexId], &'a mut Vec<f32>)>,
);

/// Immutable CSR graph.
///
/// Vertex ids are dense `u32`; offsets are `u64`, so graphs are capped at
/// 2^32 vertices while the edge index space is 64-bit. For undirected graphs
/// each logical edge is materialized in both endpoints' out-ranges and only
/// the forward arrays are stored: the in-view aliases the out-view. For
/// directed graphs the reverse arrays, when built, hold exactly the
/// transposed edge set.
///
/// Canonical form: every vertex's neighbor range is sorted ascending (ties on
/// neighbor id broken by weight bits), which makes construction insensitive
/// to input edge order. Duplicate edges and self-loops are preserved.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrGraph {
    directed: bool,
    weighted: bool,
    vertex_count: u32,
    out_offsets: Vec<u64>,
    out_neighbors: Vec<VertexId>,
    out_weights: Vec<f32>,
    in_offsets: Option<Vec<u64>>,
    in_neighbors: Option<Vec<VertexId>>,
    in_weights: Option<Vec<f32>>,
}

impl CsrGraph {
    /// Builds canonical CSR from an edge list.
    ///
    /// `build_reverse` requests the transposed arrays; it is a no-op for
    /// undirected graphs, whose in-view is the out-view.
    pub fn from_edge_list(el: &EdgeList, build_reverse: bool) -> Result<Self, GraphError> {
        let n = el.vertex_count();
        for e in el.edges() {
            for v in [e.src, e.dst] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: u64::from(v),
                        vertex_count: u64::from(n),
                    });
                }
            }
        }

        // (src, dst, weight) triples with undirected edges doubled.
        let weighted = el.has_weights();
        let mut triples: Vec<(VertexId, VertexId, f32)> =
            Vec::with_capacity(el.edges().len() * if el.directed() { 1 } else { 2 });
        for e in el.edges() {
            let w = e.weight.unwrap_or(DEFAULT_WEIGHT);
            triples.push((e.src, e.dst, w));
            if !el.directed() {
                triples.push((e.dst, e.src, w));
            }
        }

        let (out_offsets, out_neighbors, out_weights) = bucket_and_sort(n, &triples, false);
        let (in_offsets, in_neighbors, in_weights) = if el.directed() && build_reverse {
            let (o, nb, w) = bucket_and_sort(n, &triples, true);
            (Some(o), Some(nb), Some(w))
        } else {
            (None, None, None)
        };

        Ok(CsrGraph {
            directed: el.directed(),
            weighted,
            vertex_count: n,
            out_offsets,
            out_neighbors,
            out_weights,
            in_offsets,
            in_neighbors,
            in_weights,
        })
    }

    /// Assembles a graph from raw parts, enforcing every structural invariant.
    /// This is the validation path used by the binary decoder.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        directed: bool,
        weighted: bool,
        vertex_count: u32,
        out_offsets: Vec<u64>,
        out_neighbors: Vec<VertexId>,
        out_weights: Vec<f32>,
        reverse: Option<(Vec<u64>, Vec<VertexId>, Vec<f32>)>,
    ) -> Result<Self, GraphError> {
        check_csr_arrays(vertex_count, &out_offsets, &out_neighbors, &out_weights)?;
        let (in_offsets, in_neighbors, in_weights) = match reverse {
            None => (None, None, None),
            Some((o, nb, w)) => {
                if !directed {
                    return Err(GraphError::ShapeMismatch(
                        "reverse arrays present on an undirected graph",
                    ));
                }
                check_csr_arrays(vertex_count, &o, &nb, &w)?;
                // The reverse structure must be exactly the transpose: rebuild
                // it from the forward arrays and compare.
                let mut triples = Vec::with_capacity(out_neighbors.len());
                for v in 0..vertex_count {
                    let range = out_offsets[v as usize] as usize..out_offsets[v as usize + 1] as usize;
                    for i in range {
                        triples.push((v, out_neighbors[i], out_weights[i]));
                    }
                }
                let (eo, enb, ew) = bucket_and_sort(vertex_count, &triples, true);
                if eo != o || enb != nb || ew.len() != w.len() {
                    return Err(GraphError::ShapeMismatch(
                        "reverse arrays are not the transpose of the forward arrays",
                    ));
                }
                // Weights must agree as multisets per (dst, src) pair; the
                // canonical sort already fixes their order.
                if ew.iter().zip(w.iter()).any(|(a, b)| a.to_bits() != b.to_bits()) {
                    return Err(GraphError::ShapeMismatch(
                        "reverse weights do not match forward weights",
                    ));
                }
                (Some(o), Some(nb), Some(w))
            }
        };
        Ok(CsrGraph {
            directed,
            weighted,
            vertex_count,
            out_offsets,
            out_neighbors,
            out_weights,
            in_offsets,
            in_neighbors,
            in_weights,
        })
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    /// True when the graph carries explicit (or generated) weights rather
    /// than the all-ones default.
    pub fn weighted(&self) -> bool {
        self.weighted
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    /// Number of stored directed edges (undirected input counts twice).
    pub fn edge_count(&self) -> u64 {
        self.out_neighbors.len() as u64
    }

    /// True when pull-style (in-neighbor) traversal is possible.
    pub fn has_in_view(&self) -> bool {
        !self.directed || self.in_offsets.is_some()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        (self.out_offsets[v + 1] - self.out_offsets[v]) as usize
    }

    /// Global edge-index range of `v`'s out-edges.
    pub fn out_range(&self, v: VertexId) -> core::ops::Range<usize> {
        let v = v as usize;
        self.out_offsets[v] as usize..self.out_offsets[v + 1] as usize
    }

    /// Destination and weight of the out-edge with global index `e`.
    #[inline]
    pub fn out_edge(&self, e: usize) -> (VertexId, f32) {
        (self.out_neighbors[e], self.out_weights[e])
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f32)> + '_ {
        let r = self.out_range(v);
        self.out_neighbors[r.clone()]
            .iter()
            .copied()
            .zip(self.out_weights[r].iter().copied())
    }

    /// In-degree of `v`; for undirected graphs this is the out-degree.
    pub fn in_degree(&self, v: VertexId) -> Option<usize> {
        if !self.directed {
            return Some(self.out_degree(v));
        }
        let offsets = self.in_offsets.as_ref()?;
        let v = v as usize;
        Some((offsets[v + 1] - offsets[v]) as usize)
    }

    /// Iterates `(source, weight)` over the in-edges of `v`. Returns `None`
    /// for directed graphs built without the reverse structure.
    pub fn in_edges(&self, v: VertexId) -> Option<impl Iterator<Item = (VertexId, f32)> + '_> {
        let (offsets, neighbors, weights) = if self.directed {
            (
                self.in_offsets.as_ref()?,
                self.in_neighbors.as_ref()?,
                self.in_weights.as_ref()?,
            )
        } else {
            (&self.out_offsets, &self.out_neighbors, &self.out_weights)
        };
        let v = v as usize;
        let r = offsets[v] as usize..offsets[v + 1] as usize;
        Some(
            neighbors[r.clone()]
                .iter()
                .copied()
                .zip(weights[r].iter().copied()),
        )
    }

    pub(crate) fn out_parts(&self) -> (&[u64], &[VertexId], &[f32]) {
        (&self.out_offsets, &self.out_neighbors, &self.out_weights)
    }

    pub(crate) fn in_parts(&self) -> Option<(&[u64], &[VertexId], &[f32])> {
        Some((
            self.in_offsets.as_ref()?,
            self.in_neighbors.as_ref()?,
            self.in_weights.as_ref()?,
        ))
    }

    /// Overwrites every weight deterministically from `seed`, with each value
    /// drawn from `[lo, hi)`. The two directions of one undirected edge (and
    /// any parallel copies of it) receive the same weight, because values are
    /// keyed by the edge's endpoint pair.
    pub fn generate_weights(&mut self, seed: u64, lo: f32, hi: f32) -> Result<(), GraphError> {
        super::weights::generate(self, seed, lo, hi)
    }

    /// Builds the reverse (in-neighbor) arrays from the forward arrays if
    /// they are missing. A no-op for undirected graphs and for graphs that
    /// already carry them.
    pub fn ensure_reverse(&mut self) {
        if !self.directed || self.in_offsets.is_some() {
            return;
        }
        let mut triples = Vec::with_capacity(self.out_neighbors.len());
        for v in 0..self.vertex_count {
            for i in self.out_range(v) {
                triples.push((v, self.out_neighbors[i], self.out_weights[i]));
            }
        }
        let (o, nb, w) = bucket_and_sort(self.vertex_count, &triples, true);
        self.in_offsets = Some(o);
        self.in_neighbors = Some(nb);
        self.in_weights = Some(w);
    }

    pub(crate) fn weights_mut(&mut self) -> WeightSlots<'_> {
        let rev = match (&self.in_offsets, &self.in_neighbors, &mut self.in_weights) {
            (Some(o), Some(nb), Some(w)) => Some((o.as_slice(), nb.as_slice(), w)),
            _ => None,
        };
        (
            &self.out_offsets,
            &self.out_neighbors,
            &mut self.out_weights,
            rev,
        )
    }

    pub(crate) fn set_weighted(&mut self, weighted: bool) {
        self.weighted = weighted;
    }

    /// Reconstructs the edge multiset as sorted `(src, dst, weight-bits)`
    /// tuples; the round-trip oracle for construction and persistence tests.
    pub fn edge_tuples(&self) -> Vec<(VertexId, VertexId, u32)> {
        let mut out = Vec::with_capacity(self.out_neighbors.len());
        for v in 0..self.vertex_count {
            for i in self.out_range(v) {
                out.push((v, self.out_neighbors[i], self.out_weights[i].to_bits()));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Counting-sort CSR construction. With `transpose` the triples are bucketed
/// by destination instead of source.
fn bucket_and_sort(
    n: u32,
    triples: &[(VertexId, VertexId, f32)],
    transpose: bool,
) -> (Vec<u64>, Vec<VertexId>, Vec<f32>) {
    let n = n as usize;
    let mut offsets = vec![0u64; n + 1];
    for &(s, d, _) in triples {
        let key = if transpose { d } else { s };
        offsets[key as usize + 1] += 1;
    }
    for i in 1..=n {
        offsets[i] += offsets[i - 1];
    }
    let m = triples.len();
    let mut neighbors = vec![0 as VertexId; m];
    let mut weights = vec![0f32; m];
    let mut cursor = offsets.clone();
    for &(s, d, w) in triples {
        let (key, other) = if transpose { (d, s) } else { (s, d) };
        let at = cursor[key as usize] as usize;
        neighbors[at] = other;
        weights[at] = w;
        cursor[key as usize] += 1;
    }
    // Canonicalize each range: ascending neighbor, ties by weight bits.
    for v in 0..n {
        let range = offsets[v] as usize..offsets[v + 1] as usize;
        let mut pairs: Vec<(VertexId, u32)> = neighbors[range.clone()]
            .iter()
            .copied()
            .zip(weights[range.clone()].iter().map(|w| w.to_bits()))
            .collect();
        pairs.sort_unstable();
        for (i, (nb, wb)) in range.zip(pairs) {
            neighbors[i] = nb;
            weights[i] = f32::from_bits(wb);
        }
    }
    (offsets, neighbors, weights)
}

fn check_csr_arrays(
    n: u32,
    offsets: &[u64],
    neighbors: &[VertexId],
    weights: &[f32],
) -> Result<(), GraphError> {
    if offsets.len() != n as usize + 1 {
        return Err(GraphError::ShapeMismatch("offsets length != vertex_count + 1"));
    }
    if offsets[0] != 0 {
        return Err(GraphError::ShapeMismatch("offsets[0] != 0"));
    }
    if offsets.windows(2).any(|w| w[0] > w[1]) {
        return Err(GraphError::ShapeMismatch("offsets not non-decreasing"));
    }
    if *offsets.last().unwrap() != neighbors.len() as u64 {
        return Err(GraphError::ShapeMismatch("offsets[n] != edge_count"));
    }
    if weights.len() != neighbors.len() {
        return Err(GraphError::ShapeMismatch("weights length != edge_count"));
    }
    if neighbors.iter().any(|&v| v >= n) {
        return Err(GraphError::ShapeMismatch("neighbor id out of range"));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(GraphError::ShapeMismatch("non-finite or negative weight"));
    }
    for v in 0..n as usize {
        let r = offsets[v] as usize..offsets[v + 1] as usize;
        if neighbors[r].windows(2).any(|w| w[0] > w[1]) {
            return Err(GraphError::ShapeMismatch("neighbor range not sorted"));
        }
    }
    Ok(())
}
