//! Bulk-synchronous execution: supersteps over degree-classified frontiers,
//! push/pull phase selection, race-free combining, and the JIT filter loop.

mod executor;
mod run;
mod schedule;
mod stats;
mod superstep;

pub use executor::{Clock, Executor, NullClock, SerialExecutor};
pub use run::{direction_select, run_serial, Engine, StepOutcome};
pub use schedule::{schedule_tasks, TaskChunk, WorkerAssignment};
pub use stats::{IterationStats, RunStats, StopReason};

use core::fmt;

use crate::acc::AlgorithmError;
use crate::task::{BatchOverflowError, Separators, DEFAULT_OVERFLOW_THRESHOLD};

/// Which frontier-construction machinery the engine runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterPath {
    /// Online/ballot filters under JIT control.
    Jit,
    /// The baseline that materializes the active-edge buffer every superstep
    /// and rebuilds the frontier from unbounded bins. Push-only.
    Batch,
}

/// Engine tunables.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Logical worker count: the number of bins, scan ranges, and task-chunk
    /// queues. Results are executor-independent for a fixed value.
    pub worker_count: usize,
    /// Online-filter bin capacity.
    pub overflow_threshold: usize,
    /// Degree separators; also the medium/large chunk grains.
    pub separators: Separators,
    /// Pull when the frontier's out-degree sum exceeds `|E| / alpha`.
    pub direction_alpha: f64,
    /// Fixed combine order (ascending source id): bit-identical results
    /// across runs and worker counts, at some bookkeeping cost.
    pub deterministic: bool,
    pub max_iterations: u32,
    pub filter_path: FilterPath,
    /// Active-edge buffer budget for the batch path, in buffer entries.
    /// Defaults to `2 * edge_count`.
    pub batch_budget_entries: Option<u64>,
    /// Test/diagnostic override for the per-iteration direction decision.
    pub force_direction: Option<crate::acc::Direction>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            worker_count: 4,
            overflow_threshold: DEFAULT_OVERFLOW_THRESHOLD,
            separators: Separators::default(),
            direction_alpha: 20.0,
            deterministic: false,
            max_iterations: 100_000,
            filter_path: FilterPath::Jit,
            batch_budget_entries: None,
            force_direction: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    Algorithm(AlgorithmError),
    /// A pull phase was requested on a directed graph built without the
    /// reverse structure.
    PullWithoutReverse,
    BatchBudget(BatchOverflowError),
    InvalidConfig(&'static str),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Algorithm(e) => write!(f, "{e}"),
            EngineError::PullWithoutReverse => {
                write!(f, "pull requested but the graph has no reverse structure")
            }
            EngineError::BatchBudget(e) => write!(f, "{e}"),
            EngineError::InvalidConfig(what) => write!(f, "invalid engine config: {what}"),
        }
    }
}

impl core::error::Error for EngineError {}

impl From<AlgorithmError> for EngineError {
    fn from(e: AlgorithmError) -> Self {
        EngineError::Algorithm(e)
    }
}

impl From<BatchOverflowError> for EngineError {
    fn from(e: BatchOverflowError) -> Self {
        EngineError::BatchBudget(e)
    }
}
