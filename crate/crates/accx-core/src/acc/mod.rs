//! The Active/Compute/Combine programming abstraction.
//!
//! An algorithm supplies three data-parallel functions (an activity
//! predicate, a per-edge computation, and a commutative/associative merge of
//! edge updates) plus an `apply` step that folds the merged update into the
//! destination vertex and reports whether it changed. The engine owns all
//! scheduling; the functions here must be pure so they can run from any
//! worker concurrently.

mod fold;
mod validate;

pub use fold::fold_updates;
pub use validate::{validate_combine, CombineViolation, ValidationReport, ViolationKind};

use alloc::vec::Vec;
use core::fmt;
use rand_core::RngCore;

use crate::graph::{CsrGraph, VertexId};

/// Edge-processing direction of a superstep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Propagate updates along out-edges of active sources.
    Push,
    /// Gather updates along in-edges at destination vertices.
    Pull,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Push => "push",
            Direction::Pull => "pull",
        })
    }
}

/// How updates may be merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineClass {
    /// Every update is needed (sum, min folds); overwrites are not tolerated.
    Aggregation,
    /// All updates are identical, so applying any single one is correct.
    /// Enables early termination when gathering.
    Voting,
}

/// Per-superstep context passed to `compute` and `apply`.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    /// 1-based superstep number.
    pub iteration: u32,
    pub direction: Direction,
    /// Whether this superstep runs over the full vertex set (dense-frontier
    /// phase) rather than a sparse recorded frontier.
    pub dense: bool,
}

/// Result of applying a combined update to a vertex.
#[derive(Debug, Clone, Copy)]
pub struct Applied {
    /// Whether the vertex changed in a way that activates it next iteration.
    pub changed: bool,
    /// Magnitude of the metadata change, for convergence accounting.
    /// Discrete algorithms report 0.
    pub delta: f64,
}

impl Applied {
    pub const UNCHANGED: Applied = Applied { changed: false, delta: 0.0 };

    pub fn changed(delta: f64) -> Applied {
        Applied { changed: true, delta }
    }
}

/// Per-phase direction preference declared by an algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DirectionPolicy {
    /// Edge-ratio heuristic: pull when the frontier covers a large fraction
    /// of the edge set, push otherwise.
    Auto,
    PinnedPush,
    PinnedPull,
    /// Pull until at least `stable_fraction` of vertices stop changing, then
    /// switch to push for the remainder of the run.
    PullThenPush { stable_fraction: f64 },
}

/// Initial active set produced by `Algorithm::init`.
#[derive(Debug, Clone)]
pub enum InitialFrontier {
    Seeds(Vec<VertexId>),
    AllVertices,
}

/// Errors raised while instantiating an algorithm on a graph.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmError {
    InvalidSource { source: VertexId, vertex_count: u32 },
    NonPositiveWeight { src: VertexId, dst: VertexId },
    DirectedInputNotSupported,
    InvalidParameter(&'static str),
}

impl fmt::Display for AlgorithmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmError::InvalidSource { source, vertex_count } => {
                write!(f, "source vertex {source} out of range (vertex_count {vertex_count})")
            }
            AlgorithmError::NonPositiveWeight { src, dst } => {
                write!(f, "non-positive weight on edge {src} -> {dst}")
            }
            AlgorithmError::DirectedInputNotSupported => {
                write!(f, "algorithm is defined for undirected graphs only")
            }
            AlgorithmError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for AlgorithmError {}

/// The combine operator together with its identity, an equality predicate at
/// the operator's declared tolerance, and a sampler over the update domain
/// for validation.
pub trait Combiner: Sync {
    type Update: Clone + Send + Sync + fmt::Debug;

    /// Neutral element: `combine(x, identity()) == x`.
    fn identity(&self) -> Self::Update;

    /// The merge operator; must be commutative and associative on the update
    /// domain, which `validate_combine` spot-checks.
    fn combine(&self, a: Self::Update, b: Self::Update) -> Self::Update;

    /// Equality within the combiner's declared tolerance.
    fn eq_within_tolerance(&self, a: &Self::Update, b: &Self::Update) -> bool;

    /// Draws a value from the update domain; used only for validation.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Update;
}

/// A graph algorithm in Active/Compute/Combine form.
///
/// All methods other than `init` may be invoked concurrently from many
/// workers and must not rely on shared mutable state. `on_scheduled` is the
/// single exception: the engine calls it from the sequential scheduling
/// region with exclusive access to the vertex.
pub trait Algorithm: Combiner {
    /// Per-vertex metadata.
    type Vertex: Clone + Send + Sync;

    fn name(&self) -> &'static str;

    /// Builds the initial metadata array and the initial active set.
    fn init(&self, graph: &CsrGraph) -> Result<(Vec<Self::Vertex>, InitialFrontier), AlgorithmError>;

    /// Whether a vertex is active given its metadata.
    fn active(&self, m: &Self::Vertex, v: VertexId) -> bool;

    /// The computation on edge `(v, u)`: produces the update directed at `u`,
    /// or `None` when this edge contributes nothing.
    fn compute(&self, ctx: Ctx, mv: &Self::Vertex, w: f32, mu: &Self::Vertex) -> Option<Self::Update>;

    /// Merges the combined update into the destination vertex. Invoked at
    /// most once per vertex per superstep.
    fn apply(&self, ctx: Ctx, m: &mut Self::Vertex, update: Self::Update) -> Applied;

    fn combine_class(&self) -> CombineClass;

    fn direction_policy(&self) -> DirectionPolicy {
        DirectionPolicy::Auto
    }

    /// Dense-frontier algorithms treat every vertex as active each iteration
    /// until a phase switch, so the engine reuses the full vertex list
    /// instead of rebuilding it.
    fn dense_frontier(&self) -> bool {
        false
    }

    /// Whether a vertex should gather at all in a pull superstep.
    fn pull_candidate(&self, m: &Self::Vertex) -> bool {
        let _ = m;
        true
    }

    /// Whether `apply` runs with the identity update when no in-edge
    /// contributed (needed by recurrences with a constant term).
    fn pull_apply_on_empty(&self) -> bool {
        false
    }

    /// Sequential hook invoked when a frontier vertex is scheduled for a push
    /// superstep; used to drain per-vertex outboxes.
    fn on_scheduled(&self, m: &mut Self::Vertex) {
        let _ = m;
    }

    /// Priority used for bucketed scheduling, or `None` when the algorithm
    /// processes its whole frontier each superstep.
    fn priority(&self, m: &Self::Vertex) -> Option<f64> {
        let _ = m;
        None
    }

    /// Bucket width for priority scheduling.
    fn bucket_width(&self) -> f64 {
        f64::INFINITY
    }

    /// Algorithm-specific convergence test evaluated at each superstep
    /// boundary (in addition to the empty-frontier and iteration-cap exits).
    fn converged(&self, iteration: u32, l1_delta: f64, changed: usize, vertex_count: u32) -> bool {
        let _ = (iteration, l1_delta, changed, vertex_count);
        false
    }
}
