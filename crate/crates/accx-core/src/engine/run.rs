//! The engine driver: superstep loop, direction selection, frontier
//! rebuilding, and run statistics.

use alloc::vec::Vec;
use core::ops::Range;

use super::executor::{Clock, Executor, NullClock, SerialExecutor};
use super::schedule::schedule_tasks;
use super::stats::{IterationStats, RunStats, StopReason};
use super::superstep;
use super::{EngineConfig, EngineError, FilterPath};
use crate::acc::{Algorithm, Ctx, Direction, DirectionPolicy, InitialFrontier};
use crate::graph::{CsrGraph, VertexId};
use crate::task::{
    concat_bins, worker_ranges, ActiveLists, BatchOverflowError, FilterKind, JitController,
    JitTraceRow, ThreadBin,
};

/// Result of one `Engine::step` call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Running,
    Done(StopReason),
}

/// Edge-ratio direction heuristic: gather (pull) once the frontier's
/// out-degree sum exceeds `edge_count / alpha`, otherwise scatter (push).
pub fn direction_select(frontier_degree_sum: u64, edge_count: u64, alpha: f64) -> Direction {
    if frontier_degree_sum as f64 > edge_count as f64 / alpha {
        Direction::Pull
    } else {
        Direction::Push
    }
}

struct SuperstepWork {
    scheduled: usize,
    deferred: Vec<VertexId>,
    frontier_degree: u64,
    edges: u64,
    updated: usize,
    l1_delta: f64,
    buffer_words: u64,
}

/// One algorithm run on one graph: owns the metadata, frontier, bins, flags,
/// and the JIT controller, and advances in bulk-synchronous supersteps.
pub struct Engine<'g, A: Algorithm> {
    graph: &'g CsrGraph,
    spec: A,
    cfg: EngineConfig,
    metadata: Vec<A::Vertex>,
    flags: Vec<bool>,
    bins: Vec<ThreadBin>,
    frontier: ActiveLists,
    controller: JitController,
    ranges: Vec<Range<u32>>,
    can_pull: bool,
    uses_priority: bool,
    iteration: u32,
    dense: bool,
    switched: bool,
    rows: Vec<IterationStats>,
    stop: Option<StopReason>,
    words_highwater: u64,
    edges_total: u64,
    wall_total: u64,
}

impl<'g, A: Algorithm> Engine<'g, A> {
    pub fn new(graph: &'g CsrGraph, spec: A, cfg: EngineConfig) -> Result<Self, EngineError> {
        if cfg.worker_count == 0 {
            return Err(EngineError::InvalidConfig("worker_count must be >= 1"));
        }
        if cfg.overflow_threshold == 0 {
            return Err(EngineError::InvalidConfig("overflow_threshold must be >= 1"));
        }
        let can_pull = graph.has_in_view();
        if cfg.force_direction == Some(Direction::Pull) {
            if cfg.filter_path == FilterPath::Batch {
                return Err(EngineError::InvalidConfig("the batch path is push-only"));
            }
            if !can_pull {
                return Err(EngineError::PullWithoutReverse);
            }
        }
        if cfg.filter_path == FilterPath::Jit
            && cfg.force_direction.is_none()
            && !can_pull
            && matches!(
                spec.direction_policy(),
                DirectionPolicy::PinnedPull | DirectionPolicy::PullThenPush { .. }
            )
        {
            return Err(EngineError::PullWithoutReverse);
        }

        let n = graph.vertex_count();
        let (metadata, initial) = spec.init(graph)?;
        if metadata.len() != n as usize {
            return Err(EngineError::InvalidConfig(
                "init returned a metadata array of the wrong length",
            ));
        }

        let mut flags = alloc::vec![false; n as usize];
        let mut frontier = ActiveLists::new();
        let dense = match initial {
            InitialFrontier::AllVertices => {
                for v in 0..n {
                    frontier.push(v, graph.out_degree(v), cfg.separators);
                }
                true
            }
            InitialFrontier::Seeds(seeds) => {
                for v in seeds {
                    assert!(v < n, "seed vertex out of range");
                    frontier.push(v, graph.out_degree(v), cfg.separators);
                    flags[v as usize] = true;
                }
                false
            }
        };

        let bin_capacity = match cfg.filter_path {
            FilterPath::Jit => cfg.overflow_threshold,
            FilterPath::Batch => usize::MAX,
        };
        let bins = (0..cfg.worker_count)
            .map(|w| ThreadBin::new(w, bin_capacity))
            .collect();
        let ranges = worker_ranges(n, cfg.worker_count).collect();
        let controller = JitController::new(cfg.overflow_threshold);
        let uses_priority = spec.bucket_width().is_finite();

        Ok(Engine {
            graph,
            spec,
            cfg,
            metadata,
            flags,
            bins,
            frontier,
            controller,
            ranges,
            can_pull,
            uses_priority,
            iteration: 1,
            dense,
            switched: false,
            rows: Vec::new(),
            stop: None,
            words_highwater: 0,
            edges_total: 0,
            wall_total: 0,
        })
    }

    pub fn metadata(&self) -> &[A::Vertex] {
        &self.metadata
    }

    pub fn spec(&self) -> &A {
        &self.spec
    }

    pub fn iterations(&self) -> &[IterationStats] {
        &self.rows
    }

    pub fn jit_trace(&self) -> &[JitTraceRow] {
        self.controller.trace()
    }

    /// Runs supersteps until a stop condition, with the serial executor.
    pub fn run(&mut self) -> Result<StopReason, EngineError> {
        self.run_with(&SerialExecutor, &NullClock)
    }

    pub fn run_with<E: Executor>(
        &mut self,
        exec: &E,
        clock: &dyn Clock,
    ) -> Result<StopReason, EngineError> {
        loop {
            if let StepOutcome::Done(reason) = self.step_with(exec, clock)? {
                return Ok(reason);
            }
        }
    }

    /// Runs a single superstep with the serial executor.
    pub fn step(&mut self) -> Result<StepOutcome, EngineError> {
        self.step_with(&SerialExecutor, &NullClock)
    }

    pub fn step_with<E: Executor>(
        &mut self,
        exec: &E,
        clock: &dyn Clock,
    ) -> Result<StepOutcome, EngineError> {
        if let Some(reason) = self.stop {
            return Ok(StepOutcome::Done(reason));
        }
        let t = self.iteration;
        let t0 = clock.now_ns();
        let n = self.graph.vertex_count();
        let direction = self.decide_direction()?;

        let work = match (self.cfg.filter_path, direction) {
            (FilterPath::Batch, _) => self.batch_superstep(exec, t)?,
            (FilterPath::Jit, Direction::Push) => self.push_superstep(exec, t),
            (FilterPath::Jit, Direction::Pull) => self.pull_superstep(exec, t),
        };
        self.edges_total += work.edges;

        // Dense phases end when the algorithm's stability switch fires.
        let mut switch_now = false;
        if let DirectionPolicy::PullThenPush { stable_fraction } = self.spec.direction_policy() {
            if !self.switched {
                let stable = (n as usize - work.updated) as f64 / (n as f64).max(1.0);
                if stable >= stable_fraction {
                    switch_now = true;
                }
            }
        }

        // Frontier for the next iteration, plus the trace row for this one.
        let overflowed = self.bins.iter().any(|b| b.overflowed());
        let bin_entries: u64 = self.bins.iter().map(|b| b.len() as u64).sum();
        let graph = self.graph;
        let seps = self.cfg.separators;
        let next = match self.cfg.filter_path {
            FilterPath::Batch => {
                let lists = concat_bins(&self.bins, |v| graph.out_degree(v), seps)
                    .expect("batch bins are unbounded");
                for bin in &mut self.bins {
                    bin.reset();
                }
                if self.dense && !switch_now {
                    self.controller.note(t, FilterKind::Batch, &self.frontier, overflowed);
                    None
                } else {
                    self.controller.note(t, FilterKind::Batch, &lists, overflowed);
                    Some(lists)
                }
            }
            FilterPath::Jit if self.dense && t > 1 && !switch_now => {
                self.controller.note(t, FilterKind::Reuse, &self.frontier, overflowed);
                for bin in &mut self.bins {
                    bin.reset();
                }
                None
            }
            FilterPath::Jit => {
                let lists = self.controller.step(
                    t,
                    &mut self.bins,
                    &self.flags,
                    |v| graph.out_degree(v),
                    self.cfg.worker_count,
                    seps,
                );
                if self.dense && !switch_now {
                    // First iteration of a dense phase: the filter ran for
                    // the record, but the frontier stays the full list.
                    None
                } else {
                    Some(lists)
                }
            }
        };

        if switch_now {
            self.dense = false;
            self.switched = true;
        }

        let filter = self
            .controller
            .trace()
            .last()
            .map(|row| row.filter)
            .unwrap_or(FilterKind::Online);

        if let Some(mut lists) = next {
            // Deferred vertices kept their flags, so a ballot scan already
            // contains them; the other paths append them explicitly.
            if !work.deferred.is_empty() && filter != FilterKind::Ballot {
                for &v in &work.deferred {
                    lists.push(v, graph.out_degree(v), seps);
                }
            }
            self.frontier = lists;
        }

        let flags_words = u64::from(n).div_ceil(4);
        let frontier_words = self.frontier.words()
            + bin_entries
            + work.deferred.len() as u64
            + flags_words
            + work.buffer_words;
        self.words_highwater = self.words_highwater.max(frontier_words);

        let wall_ns = clock.now_ns().saturating_sub(t0);
        self.wall_total += wall_ns;
        self.rows.push(IterationStats {
            iteration: t,
            direction,
            filter,
            small: self.frontier.small.len(),
            medium: self.frontier.medium.len(),
            large: self.frontier.large.len(),
            scheduled: work.scheduled,
            deferred: work.deferred.len(),
            frontier_degree: work.frontier_degree,
            edges_examined: work.edges,
            updated: work.updated,
            l1_delta: work.l1_delta,
            overflowed,
            frontier_words,
            wall_ns,
        });

        if self.spec.converged(t, work.l1_delta, work.updated, n) {
            self.stop = Some(StopReason::ConvergenceTest);
        } else if self.frontier.is_empty() {
            self.stop = Some(StopReason::FrontierEmpty);
        } else if t >= self.cfg.max_iterations {
            self.stop = Some(StopReason::MaxIterations);
        }
        self.iteration = t + 1;
        match self.stop {
            Some(reason) => Ok(StepOutcome::Done(reason)),
            None => Ok(StepOutcome::Running),
        }
    }

    /// Consumes the engine into the final metadata and the run record.
    pub fn finish(self) -> (Vec<A::Vertex>, RunStats) {
        let stop = self.stop.unwrap_or(StopReason::MaxIterations);
        let stats = RunStats {
            iterations: self.rows,
            stop,
            converged: stop != StopReason::MaxIterations,
            total_edges_examined: self.edges_total,
            frontier_words_highwater: self.words_highwater,
            batch_buffer_bound_words: 2 * self.graph.edge_count(),
            total_wall_ns: self.wall_total,
        };
        (self.metadata, stats)
    }

    fn decide_direction(&self) -> Result<Direction, EngineError> {
        if let Some(d) = self.cfg.force_direction {
            return Ok(d);
        }
        if self.cfg.filter_path == FilterPath::Batch {
            return Ok(Direction::Push);
        }
        let direction = match self.spec.direction_policy() {
            DirectionPolicy::PinnedPush => Direction::Push,
            DirectionPolicy::PinnedPull => Direction::Pull,
            DirectionPolicy::PullThenPush { .. } => {
                if self.switched {
                    Direction::Push
                } else {
                    Direction::Pull
                }
            }
            DirectionPolicy::Auto => {
                if !self.can_pull {
                    Direction::Push
                } else {
                    direction_select(
                        self.frontier.total_degree(),
                        self.graph.edge_count(),
                        self.cfg.direction_alpha,
                    )
                }
            }
        };
        if direction == Direction::Pull && !self.can_pull {
            return Err(EngineError::PullWithoutReverse);
        }
        Ok(direction)
    }

    /// Sequential scheduling pass over the frontier: duplicate suppression
    /// via the updated flags, the activity predicate, the priority gate, and
    /// the per-vertex scheduling hook. Deferred vertices keep their flag set
    /// so they stay active.
    fn schedule_pass(&mut self) -> (ActiveLists, Vec<VertexId>, u64) {
        let seps = self.cfg.separators;
        let frontier = core::mem::take(&mut self.frontier);
        let frontier_degree = frontier.total_degree();

        let limit = if self.uses_priority {
            let width = self.spec.bucket_width();
            let mut min_p = f64::INFINITY;
            for v in frontier.iter_all() {
                let vi = v as usize;
                if self.flags[vi] && self.spec.active(&self.metadata[vi], v) {
                    if let Some(p) = self.spec.priority(&self.metadata[vi]) {
                        if p < min_p {
                            min_p = p;
                        }
                    }
                }
            }
            if min_p.is_finite() {
                (((min_p / width) as u64) as f64 + 1.0) * width
            } else {
                f64::INFINITY
            }
        } else {
            f64::INFINITY
        };

        let mut scheduled = ActiveLists::new();
        let mut deferred = Vec::new();
        for v in frontier.iter_all() {
            let vi = v as usize;
            if !self.flags[vi] {
                continue;
            }
            if !self.spec.active(&self.metadata[vi], v) {
                self.flags[vi] = false;
                continue;
            }
            if self.uses_priority {
                if let Some(p) = self.spec.priority(&self.metadata[vi]) {
                    if p >= limit {
                        deferred.push(v);
                        continue;
                    }
                }
            }
            self.flags[vi] = false;
            self.spec.on_scheduled(&mut self.metadata[vi]);
            scheduled.push(v, self.graph.out_degree(v), seps);
        }
        (scheduled, deferred, frontier_degree)
    }

    fn push_superstep<E: Executor>(&mut self, exec: &E, t: u32) -> SuperstepWork {
        let ctx = Ctx { iteration: t, direction: Direction::Push, dense: self.dense };
        let (scheduled, deferred, frontier_degree) = if self.dense {
            for f in self.flags.iter_mut() {
                *f = false;
            }
            (self.frontier.clone(), Vec::new(), self.frontier.total_degree())
        } else {
            self.schedule_pass()
        };
        let scheduled_count = scheduled.len();

        let assignment = schedule_tasks(
            &scheduled,
            self.graph,
            self.cfg.worker_count,
            self.cfg.separators.small_max,
            self.cfg.separators.large_min,
        );
        let compute = superstep::push_compute(
            exec,
            self.graph,
            &self.spec,
            ctx,
            &self.metadata,
            assignment,
            self.cfg.deterministic,
        );
        let apply_on_empty = self.dense && self.spec.pull_apply_on_empty();
        let apply = superstep::apply_merged(
            exec,
            &self.spec,
            ctx,
            &mut self.metadata,
            &mut self.flags,
            &mut self.bins,
            &compute,
            &self.ranges,
            self.cfg.deterministic,
            apply_on_empty,
        );
        SuperstepWork {
            scheduled: scheduled_count,
            deferred,
            frontier_degree,
            edges: compute.edges,
            updated: apply.updated,
            l1_delta: apply.l1_delta,
            buffer_words: 0,
        }
    }

    fn pull_superstep<E: Executor>(&mut self, exec: &E, t: u32) -> SuperstepWork {
        let ctx = Ctx { iteration: t, direction: Direction::Pull, dense: self.dense };
        // Pull rescans metadata wholesale: stale flags and deferral state
        // are dropped, the gather rediscovers anything pending.
        for f in self.flags.iter_mut() {
            *f = false;
        }
        let frontier_degree = self.frontier.total_degree();
        let snapshot = self.metadata.clone();
        let out = superstep::pull_superstep(
            exec,
            self.graph,
            &self.spec,
            ctx,
            &snapshot,
            &mut self.metadata,
            &mut self.flags,
            &mut self.bins,
            &self.ranges,
        );
        SuperstepWork {
            scheduled: out.candidates as usize,
            deferred: Vec::new(),
            frontier_degree,
            edges: out.edges,
            updated: out.updated,
            l1_delta: out.l1_delta,
            buffer_words: 0,
        }
    }

    fn batch_superstep<E: Executor>(
        &mut self,
        exec: &E,
        t: u32,
    ) -> Result<SuperstepWork, EngineError> {
        let ctx = Ctx { iteration: t, direction: Direction::Push, dense: self.dense };
        let (scheduled, deferred, frontier_degree) = if self.dense {
            for f in self.flags.iter_mut() {
                *f = false;
            }
            (self.frontier.clone(), Vec::new(), self.frontier.total_degree())
        } else {
            self.schedule_pass()
        };
        let scheduled_count = scheduled.len();

        let needed = scheduled.total_degree();
        let budget = self
            .cfg
            .batch_budget_entries
            .unwrap_or(2 * self.graph.edge_count());
        if needed > budget {
            return Err(EngineError::BatchBudget(BatchOverflowError {
                needed_entries: needed,
                budget_entries: budget,
            }));
        }
        let mut buffer: Vec<(VertexId, u64)> = Vec::with_capacity(needed as usize);
        for v in scheduled.iter_all() {
            for e in self.graph.out_range(v) {
                buffer.push((v, e as u64));
            }
        }

        let compute = superstep::batch_compute(
            exec,
            self.graph,
            &self.spec,
            ctx,
            &self.metadata,
            &buffer,
            self.cfg.worker_count,
            self.cfg.deterministic,
        );
        let apply_on_empty = self.dense && self.spec.pull_apply_on_empty();
        let apply = superstep::apply_merged(
            exec,
            &self.spec,
            ctx,
            &mut self.metadata,
            &mut self.flags,
            &mut self.bins,
            &compute,
            &self.ranges,
            self.cfg.deterministic,
            apply_on_empty,
        );
        Ok(SuperstepWork {
            scheduled: scheduled_count,
            deferred,
            frontier_degree,
            edges: compute.edges,
            updated: apply.updated,
            l1_delta: apply.l1_delta,
            // (source, edge-id) pairs cost four words each.
            buffer_words: buffer.len() as u64 * 4,
        })
    }
}

/// Builds an engine, runs it to completion on the serial executor, and
/// returns the final metadata with the run record.
pub fn run_serial<A: Algorithm>(
    graph: &CsrGraph,
    spec: A,
    cfg: EngineConfig,
) -> Result<(Vec<A::Vertex>, RunStats), EngineError> {
    let mut engine = Engine::new(graph, spec, cfg)?;
    engine.run()?;
    Ok(engine.finish())
}
