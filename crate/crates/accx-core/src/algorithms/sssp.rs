//! Single-source shortest paths with bucketed (delta-stepping) scheduling.

use alloc::vec;
use alloc::vec::Vec;
use rand_core::RngCore;

use crate::acc::{
    Algorithm, AlgorithmError, Applied, CombineClass, Combiner, Ctx, InitialFrontier,
};
use crate::graph::{CsrGraph, VertexId};

/// Distances are folded with min; any positive bucket width yields exact
/// shortest paths, the width only changes how many supersteps the run takes.
pub struct Sssp {
    pub source: VertexId,
    pub delta: f64,
}

impl Sssp {
    pub fn new(source: VertexId, delta: f64) -> Self {
        assert!(delta > 0.0, "bucket width must be positive");
        Sssp { source, delta }
    }

    /// Default bucket width: `max(1, average edge weight)`.
    pub fn for_graph(graph: &CsrGraph, source: VertexId) -> Self {
        let m = graph.edge_count();
        let delta = if m == 0 {
            1.0
        } else {
            let sum: f64 = (0..graph.vertex_count())
                .flat_map(|v| graph.out_edges(v))
                .map(|(_, w)| f64::from(w))
                .sum();
            let avg = sum / m as f64;
            if avg > 1.0 {
                avg
            } else {
                1.0
            }
        };
        Sssp { source, delta }
    }
}

impl Combiner for Sssp {
    type Update = f64;

    fn identity(&self) -> f64 {
        f64::INFINITY
    }

    fn combine(&self, a: f64, b: f64) -> f64 {
        a.min(b)
    }

    fn eq_within_tolerance(&self, a: &f64, b: &f64) -> bool {
        a == b
    }

    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        f64::from(rng.next_u32() % 100_000) / 10.0
    }
}

impl Algorithm for Sssp {
    type Vertex = f64;

    fn name(&self) -> &'static str {
        "sssp"
    }

    fn init(&self, graph: &CsrGraph) -> Result<(Vec<f64>, InitialFrontier), AlgorithmError> {
        let n = graph.vertex_count();
        if self.source >= n {
            return Err(AlgorithmError::InvalidSource { source: self.source, vertex_count: n });
        }
        for v in 0..n {
            for (u, w) in graph.out_edges(v) {
                if w <= 0.0 {
                    return Err(AlgorithmError::NonPositiveWeight { src: v, dst: u });
                }
            }
        }
        let mut dist = vec![f64::INFINITY; n as usize];
        dist[self.source as usize] = 0.0;
        Ok((dist, InitialFrontier::Seeds(vec![self.source])))
    }

    fn active(&self, m: &f64, _v: VertexId) -> bool {
        m.is_finite()
    }

    fn compute(&self, _ctx: Ctx, mv: &f64, w: f32, _mu: &f64) -> Option<f64> {
        mv.is_finite().then(|| mv + f64::from(w))
    }

    fn apply(&self, _ctx: Ctx, m: &mut f64, update: f64) -> Applied {
        if update < *m {
            *m = update;
            Applied::changed(0.0)
        } else {
            Applied::UNCHANGED
        }
    }

    fn combine_class(&self) -> CombineClass {
        CombineClass::Aggregation
    }

    fn priority(&self, m: &f64) -> Option<f64> {
        m.is_finite().then_some(*m)
    }

    fn bucket_width(&self) -> f64 {
        self.delta
    }
}
