//! PageRank: gather-based power iteration that hands off to residual
//! propagation once most ranks have settled.

use alloc::vec::Vec;
use rand_core::RngCore;

use crate::acc::{
    Algorithm, AlgorithmError, Applied, CombineClass, Combiner, Ctx, Direction, DirectionPolicy,
    InitialFrontier,
};
use crate::graph::{CsrGraph, VertexId};

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// Per-vertex rank state. `residual` tracks the latest change (during the
/// gather phase) or the accumulated undelivered mass (during the push
/// phase); `outbox` is the drained residual a scheduled vertex scatters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrMeta {
    pub rank: f64,
    pub residual: f64,
    pub outbox: f64,
    pub inv_out_degree: f64,
}

/// Damped recurrence `r(u) = (1 - d) + d * sum(r(v) / outdeg(v))` over
/// in-neighbors. Dangling vertices contribute no mass. Runs gather
/// iterations until at least `stable_fraction` of the vertices stop moving,
/// then switches to scatter-style residual propagation, which preserves the
/// fixpoint: a drained residual is re-delivered to out-neighbors scaled by
/// `d / outdeg`, and every delivery lands in both `rank` and `residual`.
pub struct PageRank {
    pub damping: f64,
    /// Per-vertex convergence scale; the run stops when one iteration's
    /// total L1 rank change drops below `epsilon * vertex_count`.
    pub epsilon: f64,
    pub stable_fraction: f64,
}

impl Default for PageRank {
    fn default() -> Self {
        PageRank { damping: 0.85, epsilon: 1e-6, stable_fraction: 0.9 }
    }
}

impl PageRank {
    pub fn new(damping: f64, epsilon: f64) -> Result<Self, AlgorithmError> {
        if damping.is_nan() || damping <= 0.0 || damping >= 1.0 {
            return Err(AlgorithmError::InvalidParameter("damping must lie in (0, 1)"));
        }
        if epsilon.is_nan() || epsilon <= 0.0 {
            return Err(AlgorithmError::InvalidParameter("epsilon must be positive"));
        }
        Ok(PageRank { damping, epsilon, ..PageRank::default() })
    }

    /// Activity threshold: a vertex with |residual| below this is treated as
    /// settled and stops propagating.
    fn act_eps(&self) -> f64 {
        self.epsilon / 10.0
    }
}

impl Combiner for PageRank {
    type Update = f64;

    fn identity(&self) -> f64 {
        0.0
    }

    fn combine(&self, a: f64, b: f64) -> f64 {
        a + b
    }

    fn eq_within_tolerance(&self, a: &f64, b: &f64) -> bool {
        fabs(a - b) <= 1e-9 * (1.0 + fabs(*a) + fabs(*b))
    }

    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        f64::from(rng.next_u32()) / f64::from(u32::MAX)
    }
}

impl Algorithm for PageRank {
    type Vertex = PrMeta;

    fn name(&self) -> &'static str {
        "pagerank"
    }

    fn init(&self, graph: &CsrGraph) -> Result<(Vec<PrMeta>, InitialFrontier), AlgorithmError> {
        let n = graph.vertex_count();
        let mut meta = Vec::with_capacity(n as usize);
        for v in 0..n {
            let deg = graph.out_degree(v);
            meta.push(PrMeta {
                rank: 1.0,
                residual: 0.0,
                outbox: 0.0,
                inv_out_degree: if deg == 0 { 0.0 } else { 1.0 / deg as f64 },
            });
        }
        Ok((meta, InitialFrontier::AllVertices))
    }

    fn active(&self, m: &PrMeta, _v: VertexId) -> bool {
        fabs(m.residual) >= self.act_eps()
    }

    fn compute(&self, ctx: Ctx, mv: &PrMeta, _w: f32, _mu: &PrMeta) -> Option<f64> {
        match (ctx.direction, ctx.dense) {
            // Full recomputation: contribute the current rank share. The
            // scatter form of the dense phase sends exactly what the gather
            // form reads.
            (Direction::Pull, _) | (Direction::Push, true) => {
                Some(mv.rank * mv.inv_out_degree)
            }
            // Residual propagation: deliver the drained mass.
            (Direction::Push, false) => {
                (mv.outbox != 0.0).then_some(self.damping * mv.outbox * mv.inv_out_degree)
            }
        }
    }

    fn apply(&self, ctx: Ctx, m: &mut PrMeta, sum: f64) -> Applied {
        match (ctx.direction, ctx.dense) {
            (Direction::Pull, _) | (Direction::Push, true) => {
                let new = (1.0 - self.damping) + self.damping * sum;
                let delta = new - m.rank;
                m.rank = new;
                m.residual = delta;
                Applied { changed: fabs(delta) >= self.act_eps(), delta }
            }
            (Direction::Push, false) => {
                m.rank += sum;
                m.residual += sum;
                Applied { changed: fabs(m.residual) >= self.act_eps(), delta: sum }
            }
        }
    }

    fn combine_class(&self) -> CombineClass {
        CombineClass::Aggregation
    }

    fn direction_policy(&self) -> DirectionPolicy {
        DirectionPolicy::PullThenPush { stable_fraction: self.stable_fraction }
    }

    fn dense_frontier(&self) -> bool {
        true
    }

    fn pull_apply_on_empty(&self) -> bool {
        true
    }

    fn on_scheduled(&self, m: &mut PrMeta) {
        m.outbox = m.residual;
        m.residual = 0.0;
    }

    fn converged(&self, _iteration: u32, l1_delta: f64, _changed: usize, vertex_count: u32) -> bool {
        l1_delta < self.epsilon * f64::from(vertex_count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_serial, EngineConfig};
    use crate::graph::EdgeList;

    #[test]
    fn two_vertex_cycle_is_symmetric() {
        let el = EdgeList::parse_text("0 1\n1 0\n", true).unwrap();
        let g = CsrGraph::from_edge_list(&el, true).unwrap();
        let (meta, stats) =
            run_serial(&g, PageRank::default(), EngineConfig::default()).unwrap();
        assert!(stats.converged);
        assert!((meta[0].rank - meta[1].rank).abs() < 1e-12);
        // Symmetric two-cycle fixpoint is rank 1.
        assert!((meta[0].rank - 1.0).abs() < 1e-6);
    }

    #[test]
    fn isolated_vertex_settles_at_one_minus_damping() {
        let el = EdgeList::parse_text("", true).unwrap().with_vertex_count(1).unwrap();
        let g = CsrGraph::from_edge_list(&el, true).unwrap();
        let (meta, _) = run_serial(&g, PageRank::default(), EngineConfig::default()).unwrap();
        assert!((meta[0].rank - 0.15).abs() < 1e-12);
    }

    #[test]
    fn ranks_never_drop_below_base() {
        let el = crate::graph::uniform_edge_list(50, 200, 3, true);
        let g = CsrGraph::from_edge_list(&el, true).unwrap();
        let (meta, _) = run_serial(&g, PageRank::default(), EngineConfig::default()).unwrap();
        assert!(meta.iter().all(|m| m.rank >= 0.15 - 1e-9));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(PageRank::new(1.0, 1e-6).is_err());
        assert!(PageRank::new(0.85, 0.0).is_err());
    }
}
