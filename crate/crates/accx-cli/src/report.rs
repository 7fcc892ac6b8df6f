//! Run reports: human-readable text, JSON, and the per-iteration trace CSV.

use accx_core::engine::{EngineConfig, FilterPath, RunStats, StopReason};
use accx_core::graph::CsrGraph;
use serde_json::{json, Value};

use crate::verify::VerifyOutcome;

pub struct RunReport {
    pub algorithm: String,
    pub vertices: u32,
    pub edges: u64,
    pub directed: bool,
    pub weighted: bool,
    pub config: EngineConfig,
    pub load_ns: u64,
    pub repeats: u32,
    pub wall_ns_mean: u64,
    pub wall_ns_min: u64,
    pub stats: RunStats,
    pub verification: Option<VerifyOutcome>,
}

impl RunReport {
    pub fn new(
        algorithm: &str,
        graph: &CsrGraph,
        config: EngineConfig,
        load_ns: u64,
        stats: RunStats,
    ) -> Self {
        RunReport {
            algorithm: algorithm.to_string(),
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            directed: graph.directed(),
            weighted: graph.weighted(),
            config,
            load_ns,
            repeats: 1,
            wall_ns_mean: 0,
            wall_ns_min: 0,
            stats,
            verification: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .stats
            .iterations
            .iter()
            .map(|r| {
                json!({
                    "iteration": r.iteration,
                    "direction": r.direction.to_string(),
                    "filter": r.filter.to_string(),
                    "small": r.small,
                    "medium": r.medium,
                    "large": r.large,
                    "scheduled": r.scheduled,
                    "deferred": r.deferred,
                    "edges_examined": r.edges_examined,
                    "updated": r.updated,
                    "l1_delta": r.l1_delta,
                    "overflowed": r.overflowed,
                    "frontier_words": r.frontier_words,
                    "wall_ns": r.wall_ns,
                })
            })
            .collect();
        json!({
            "algorithm": self.algorithm,
            "graph": {
                "vertices": self.vertices,
                "edges": self.edges,
                "directed": self.directed,
                "weighted": self.weighted,
            },
            "config": {
                "workers": self.config.worker_count,
                "overflow_threshold": self.config.overflow_threshold,
                "separators": [self.config.separators.small_max, self.config.separators.large_min],
                "alpha": self.config.direction_alpha,
                "deterministic": self.config.deterministic,
                "max_iterations": self.config.max_iterations,
                "filter_path": match self.config.filter_path {
                    FilterPath::Jit => "jit",
                    FilterPath::Batch => "batch",
                },
            },
            "load_ns": self.load_ns,
            "repeats": self.repeats,
            "wall_ns_mean": self.wall_ns_mean,
            "wall_ns_min": self.wall_ns_min,
            "iterations": self.stats.iteration_count(),
            "stop": stop_name(self.stats.stop),
            "converged": self.stats.converged,
            "total_edges_examined": self.stats.total_edges_examined,
            "frontier_words_highwater": self.stats.frontier_words_highwater,
            "batch_buffer_bound_words": self.stats.batch_buffer_bound_words,
            "rows": rows,
            "verification": self.verification.as_ref().map(|v| json!({
                "pass": v.pass,
                "detail": v.detail,
            })),
        })
    }

    /// Per-iteration trace rows; also the JIT controller audit trail, since
    /// the filter and overflow columns carry its decisions.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from(
            "iteration,direction,filter,small,medium,large,overflowed,scheduled,deferred,edges_examined,updated,l1_delta,wall_ns\n",
        );
        for r in &self.stats.iterations {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{:e},{}\n",
                r.iteration,
                r.direction,
                r.filter,
                r.small,
                r.medium,
                r.large,
                r.overflowed,
                r.scheduled,
                r.deferred,
                r.edges_examined,
                r.updated,
                r.l1_delta,
                r.wall_ns,
            ));
        }
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}: V={} E={} ({}, {})\n",
            self.algorithm,
            self.vertices,
            self.edges,
            if self.directed { "directed" } else { "undirected" },
            if self.weighted { "weighted" } else { "unweighted" },
        ));
        out.push_str(&format!(
            "load {:.3} ms | run mean {:.3} ms, min {:.3} ms over {} repeat(s)\n",
            self.load_ns as f64 / 1e6,
            self.wall_ns_mean as f64 / 1e6,
            self.wall_ns_min as f64 / 1e6,
            self.repeats,
        ));
        out.push_str(&format!(
            "{} iterations, stop: {}, frontier words high-water {} (batch bound {})\n",
            self.stats.iteration_count(),
            stop_name(self.stats.stop),
            self.stats.frontier_words_highwater,
            self.stats.batch_buffer_bound_words,
        ));
        let pushes = self
            .stats
            .iterations
            .iter()
            .filter(|r| r.direction == accx_core::acc::Direction::Push)
            .count();
        let ballots = self
            .stats
            .iterations
            .iter()
            .filter(|r| r.filter == accx_core::task::FilterKind::Ballot)
            .count();
        out.push_str(&format!(
            "directions: {} push / {} pull | ballot selected {} time(s) | edges examined {}\n",
            pushes,
            self.stats.iteration_count() as usize - pushes,
            ballots,
            self.stats.total_edges_examined,
        ));
        if let Some(v) = &self.verification {
            out.push_str(&format!(
                "verification: {} ({})\n",
                if v.pass { "PASS" } else { "FAIL" },
                v.detail
            ));
        }
        out
    }
}

fn stop_name(stop: StopReason) -> &'static str {
    match stop {
        StopReason::FrontierEmpty => "frontier_empty",
        StopReason::ConvergenceTest => "convergence",
        StopReason::MaxIterations => "max_iterations",
    }
}
