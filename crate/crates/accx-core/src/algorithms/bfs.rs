//! Breadth-first search: level labelling with a voting combine.

use alloc::vec;
use alloc::vec::Vec;
use rand_core::RngCore;

use crate::acc::{
    Algorithm, AlgorithmError, Applied, CombineClass, Combiner, Ctx, Direction, InitialFrontier,
};
use crate::graph::{CsrGraph, VertexId};

/// Level value of unreached vertices.
pub const UNVISITED: u32 = u32::MAX;

pub struct Bfs {
    pub source: VertexId,
}

impl Bfs {
    pub fn new(source: VertexId) -> Self {
        Bfs { source }
    }
}

impl Combiner for Bfs {
    type Update = u32;

    fn identity(&self) -> u32 {
        u32::MAX
    }

    // All updates within one superstep propose the same level, so min is a
    // correct voting merge.
    fn combine(&self, a: u32, b: u32) -> u32 {
        a.min(b)
    }

    fn eq_within_tolerance(&self, a: &u32, b: &u32) -> bool {
        a == b
    }

    fn sample(&self, rng: &mut dyn RngCore) -> u32 {
        rng.next_u32() % 1_000
    }
}

impl Algorithm for Bfs {
    type Vertex = u32;

    fn name(&self) -> &'static str {
        "bfs"
    }

    fn init(&self, graph: &CsrGraph) -> Result<(Vec<u32>, InitialFrontier), AlgorithmError> {
        let n = graph.vertex_count();
        if self.source >= n {
            return Err(AlgorithmError::InvalidSource { source: self.source, vertex_count: n });
        }
        let mut levels = vec![UNVISITED; n as usize];
        levels[self.source as usize] = 0;
        Ok((levels, InitialFrontier::Seeds(vec![self.source])))
    }

    fn active(&self, m: &u32, _v: VertexId) -> bool {
        *m != UNVISITED
    }

    fn compute(&self, ctx: Ctx, mv: &u32, _w: f32, _mu: &u32) -> Option<u32> {
        match ctx.direction {
            Direction::Push => (*mv != UNVISITED).then(|| mv + 1),
            // Gathering: only sources discovered in the previous level
            // contribute, and one is enough.
            Direction::Pull => {
                (mv.checked_add(1) == Some(ctx.iteration)).then(|| mv + 1)
            }
        }
    }

    fn apply(&self, _ctx: Ctx, m: &mut u32, level: u32) -> Applied {
        if *m == UNVISITED {
            *m = level;
            Applied::changed(0.0)
        } else {
            Applied::UNCHANGED
        }
    }

    fn combine_class(&self) -> CombineClass {
        CombineClass::Voting
    }

    fn pull_candidate(&self, m: &u32) -> bool {
        *m == UNVISITED
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_serial, EngineConfig};
    use crate::graph::EdgeList;

    fn path5() -> CsrGraph {
        let el = EdgeList::parse_text("0 1\n1 2\n2 3\n3 4\n", false).unwrap();
        CsrGraph::from_edge_list(&el, false).unwrap()
    }

    #[test]
    fn path_graph_levels() {
        let cfg = EngineConfig {
            force_direction: Some(crate::acc::Direction::Push),
            ..EngineConfig::default()
        };
        let (levels, stats) = run_serial(&path5(), Bfs::new(0), cfg).unwrap();
        assert_eq!(levels, vec![0, 1, 2, 3, 4]);
        // Four productive iterations, one new vertex per level.
        let updated: Vec<usize> = stats.iterations.iter().map(|r| r.updated).collect();
        assert_eq!(&updated[..4], &[1, 1, 1, 1]);
        let frontier_sizes: Vec<usize> = stats.iterations.iter().map(|r| r.small).collect();
        assert_eq!(&frontier_sizes[..4], &[1, 1, 1, 1]);
    }

    #[test]
    fn pull_and_push_agree_on_path() {
        for dir in [crate::acc::Direction::Push, crate::acc::Direction::Pull] {
            let cfg = EngineConfig { force_direction: Some(dir), ..EngineConfig::default() };
            let (levels, _) = run_serial(&path5(), Bfs::new(0), cfg).unwrap();
            assert_eq!(levels, vec![0, 1, 2, 3, 4], "direction {dir}");
        }
    }

    #[test]
    fn unreachable_component_stays_unvisited() {
        let el = EdgeList::parse_text("0 1\n2 3\n", false).unwrap();
        let g = CsrGraph::from_edge_list(&el, false).unwrap();
        let (levels, _) = run_serial(&g, Bfs::new(0), EngineConfig::default()).unwrap();
        assert_eq!(levels, vec![0, 1, UNVISITED, UNVISITED]);
    }

    #[test]
    fn invalid_source_rejected() {
        let err = run_serial(&path5(), Bfs::new(9), EngineConfig::default()).unwrap_err();
        assert!(matches!(
            err,
            crate::engine::EngineError::Algorithm(AlgorithmError::InvalidSource { source: 9, .. })
        ));
    }
}
