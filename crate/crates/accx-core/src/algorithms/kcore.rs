//! k-core decomposition by iterative deletion.

use alloc::vec::Vec;
use rand_core::RngCore;

use crate::acc::{
    Algorithm, AlgorithmError, Applied, CombineClass, Combiner, Ctx, Direction, InitialFrontier,
};
use crate::graph::{CsrGraph, VertexId};

/// `died_at` value of vertices still in the core.
pub const ALIVE: u32 = u32::MAX;

/// Per-vertex remaining-degree counter and deletion stamp. A dead vertex's
/// counter stays frozen at its value when it was deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KCoreMeta {
    pub counter: u32,
    pub died_at: u32,
}

impl KCoreMeta {
    pub fn alive(&self) -> bool {
        self.died_at == ALIVE
    }
}

pub struct KCore {
    pub k: u32,
}

impl KCore {
    pub fn new(k: u32) -> Self {
        KCore { k }
    }
}

impl Default for KCore {
    fn default() -> Self {
        KCore { k: 16 }
    }
}

impl Combiner for KCore {
    type Update = u32;

    fn identity(&self) -> u32 {
        0
    }

    /// Number of neighbor deletions to absorb.
    fn combine(&self, a: u32, b: u32) -> u32 {
        a + b
    }

    fn eq_within_tolerance(&self, a: &u32, b: &u32) -> bool {
        a == b
    }

    fn sample(&self, rng: &mut dyn RngCore) -> u32 {
        rng.next_u32() % 64
    }
}

impl Algorithm for KCore {
    type Vertex = KCoreMeta;

    fn name(&self) -> &'static str {
        "kcore"
    }

    fn init(&self, graph: &CsrGraph) -> Result<(Vec<KCoreMeta>, InitialFrontier), AlgorithmError> {
        if graph.directed() {
            return Err(AlgorithmError::DirectedInputNotSupported);
        }
        let n = graph.vertex_count();
        let mut meta = Vec::with_capacity(n as usize);
        let mut seeds = Vec::new();
        for v in 0..n {
            let degree = graph.out_degree(v) as u32;
            if degree < self.k {
                // Deleted before the first superstep; propagates at
                // iteration 1.
                meta.push(KCoreMeta { counter: degree, died_at: 0 });
                seeds.push(v);
            } else {
                meta.push(KCoreMeta { counter: degree, died_at: ALIVE });
            }
        }
        Ok((meta, InitialFrontier::Seeds(seeds)))
    }

    fn active(&self, m: &KCoreMeta, _v: VertexId) -> bool {
        !m.alive()
    }

    fn compute(&self, ctx: Ctx, mv: &KCoreMeta, _w: f32, _mu: &KCoreMeta) -> Option<u32> {
        match ctx.direction {
            // The push frontier holds exactly the vertices deleted last
            // iteration; each out-edge carries one decrement.
            Direction::Push => (!mv.alive()).then_some(1),
            // Gathering counts only freshly deleted in-neighbors, so older
            // deaths are not double-subtracted.
            Direction::Pull => {
                (mv.died_at.checked_add(1) == Some(ctx.iteration)).then_some(1)
            }
        }
    }

    fn apply(&self, ctx: Ctx, m: &mut KCoreMeta, deletions: u32) -> Applied {
        if !m.alive() {
            // Already below the threshold: stop subtracting.
            return Applied::UNCHANGED;
        }
        m.counter = m.counter.saturating_sub(deletions);
        if m.counter < self.k {
            m.died_at = ctx.iteration;
            Applied::changed(0.0)
        } else {
            Applied::UNCHANGED
        }
    }

    fn combine_class(&self) -> CombineClass {
        CombineClass::Aggregation
    }

    fn pull_candidate(&self, m: &KCoreMeta) -> bool {
        m.alive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_serial, EngineConfig, EngineError};
    use crate::graph::EdgeList;

    fn run_kcore(text: &str, k: u32) -> Vec<KCoreMeta> {
        let el = EdgeList::parse_text(text, false).unwrap();
        let g = CsrGraph::from_edge_list(&el, false).unwrap();
        run_serial(&g, KCore::new(k), EngineConfig::default()).unwrap().0
    }

    #[test]
    fn triangle_survives_two_core() {
        let meta = run_kcore("0 1\n1 2\n0 2\n", 2);
        assert!(meta.iter().all(|m| m.alive()));
        assert!(meta.iter().all(|m| m.counter == 2));
    }

    #[test]
    fn star_collapses_under_two_core() {
        // Leaves die first, then the center has nothing left.
        let meta = run_kcore("0 1\n0 2\n0 3\n0 4\n0 5\n", 2);
        assert!(meta.iter().all(|m| !m.alive()));
    }

    #[test]
    fn k_zero_keeps_everything() {
        let meta = run_kcore("0 1\n1 2\n", 0);
        assert!(meta.iter().all(|m| m.alive()));
    }

    #[test]
    fn directed_input_rejected() {
        let el = EdgeList::parse_text("0 1\n", true).unwrap();
        let g = CsrGraph::from_edge_list(&el, true).unwrap();
        let err = run_serial(&g, KCore::new(2), EngineConfig::default()).unwrap_err();
        assert!(matches!(
            err,
            EngineError::Algorithm(AlgorithmError::DirectedInputNotSupported)
        ));
    }
}
