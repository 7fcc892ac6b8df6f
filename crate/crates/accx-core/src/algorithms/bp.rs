//! Belief propagation over a binary-state model: every vertex is active
//! every iteration for a fixed number of iterations.
//!
//! The per-vertex belief update is a likelihood-weighted blend of the prior
//! with the in-neighbors' beliefs:
//!
//! ```text
//! b'(u) = (prior(u) + sum w(v,u) * b(v)) / (1 + sum w(v,u))
//! ```
//!
//! which keeps beliefs in [0, 1], leaves isolated vertices at their prior,
//! and has the all-0.5 state as a fixed point for any likelihoods.

use alloc::vec::Vec;
use rand_core::RngCore;

use crate::acc::{
    Algorithm, AlgorithmError, Applied, CombineClass, Combiner, Ctx, DirectionPolicy,
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

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpMeta {
    pub belief: f64,
    pub prior: f64,
}

/// Prior probabilities per vertex.
#[derive(Debug, Clone)]
pub enum Priors {
    Uniform(f64),
    PerVertex(Vec<f64>),
}

pub struct BeliefPropagation {
    pub iterations: u32,
    pub priors: Priors,
}

impl BeliefPropagation {
    pub fn new(iterations: u32, priors: Priors) -> Self {
        BeliefPropagation { iterations, priors }
    }

    /// Uniform 0.5 priors and the default iteration budget of 30.
    pub fn default_model() -> Self {
        BeliefPropagation { iterations: 30, priors: Priors::Uniform(0.5) }
    }

    fn prior_of(&self, v: VertexId) -> f64 {
        match &self.priors {
            Priors::Uniform(p) => *p,
            Priors::PerVertex(ps) => ps[v as usize],
        }
    }
}

impl Combiner for BeliefPropagation {
    /// (weighted belief mass, weight mass).
    type Update = (f64, f64);

    fn identity(&self) -> (f64, f64) {
        (0.0, 0.0)
    }

    fn combine(&self, a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        (a.0 + b.0, a.1 + b.1)
    }

    fn eq_within_tolerance(&self, a: &(f64, f64), b: &(f64, f64)) -> bool {
        fabs(a.0 - b.0) <= 1e-9 && fabs(a.1 - b.1) <= 1e-9
    }

    fn sample(&self, rng: &mut dyn RngCore) -> (f64, f64) {
        let unit = |r: &mut dyn RngCore| f64::from(r.next_u32()) / f64::from(u32::MAX);
        (unit(rng), unit(rng))
    }
}

impl Algorithm for BeliefPropagation {
    type Vertex = BpMeta;

    fn name(&self) -> &'static str {
        "bp"
    }

    fn init(&self, graph: &CsrGraph) -> Result<(Vec<BpMeta>, InitialFrontier), AlgorithmError> {
        let n = graph.vertex_count();
        if let Priors::PerVertex(ps) = &self.priors {
            if ps.len() != n as usize {
                return Err(AlgorithmError::InvalidParameter(
                    "prior array length must equal vertex_count",
                ));
            }
        }
        for v in 0..n {
            let p = self.prior_of(v);
            if !(0.0..=1.0).contains(&p) {
                return Err(AlgorithmError::InvalidParameter("priors must lie in [0, 1]"));
            }
            for (u, w) in graph.out_edges(v) {
                if !(w > 0.0 && w < 1.0) {
                    let _ = u;
                    return Err(AlgorithmError::InvalidParameter(
                        "edge likelihoods must lie in (0, 1)",
                    ));
                }
            }
        }
        let meta = (0..n)
            .map(|v| BpMeta { belief: self.prior_of(v), prior: self.prior_of(v) })
            .collect();
        Ok((meta, InitialFrontier::AllVertices))
    }

    fn active(&self, _m: &BpMeta, _v: VertexId) -> bool {
        true
    }

    fn compute(&self, _ctx: Ctx, mv: &BpMeta, w: f32, _mu: &BpMeta) -> Option<(f64, f64)> {
        let w = f64::from(w);
        Some((w * mv.belief, w))
    }

    fn apply(&self, _ctx: Ctx, m: &mut BpMeta, (mass, weight): (f64, f64)) -> Applied {
        let new = (m.prior + mass) / (1.0 + weight);
        let delta = new - m.belief;
        m.belief = new;
        Applied { changed: delta != 0.0, delta }
    }

    fn combine_class(&self) -> CombineClass {
        CombineClass::Aggregation
    }

    fn direction_policy(&self) -> DirectionPolicy {
        DirectionPolicy::PinnedPull
    }

    fn dense_frontier(&self) -> bool {
        true
    }

    fn pull_apply_on_empty(&self) -> bool {
        true
    }

    fn converged(&self, iteration: u32, _l1: f64, _changed: usize, _n: u32) -> bool {
        iteration >= self.iterations
    }
}
