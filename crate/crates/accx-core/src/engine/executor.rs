//! Worker dispatch abstraction.
//!
//! The engine expresses every parallel phase as "run this job once per
//! worker, each with exclusive access to its own state slot". How the jobs
//! actually run is the executor's business: the serial executor here loops,
//! and the std companion crate provides a scoped-thread executor. Results
//! are identical by construction because all cross-worker merging happens
//! after the dispatch returns.

/// Runs one job instance per worker slot.
pub trait Executor: Sync {
    /// Invokes `job(w, &mut states[w])` exactly once for every
    /// `w in 0..states.len()`, possibly concurrently. `job` must be safe to
    /// call concurrently for distinct `w`; the engine guarantees slot
    /// disjointness.
    fn scope<S: Send, F: Fn(usize, &mut S) + Sync>(&self, states: &mut [S], job: F);
}

/// In-order single-context executor; the no_std default.
#[derive(Debug, Clone, Copy, Default)]
pub struct SerialExecutor;

impl Executor for SerialExecutor {
    fn scope<S: Send, F: Fn(usize, &mut S) + Sync>(&self, states: &mut [S], job: F) {
        for (w, state) in states.iter_mut().enumerate() {
            job(w, state);
        }
    }
}

/// Wall-clock source for run statistics; the core crate cannot read time
/// itself.
pub trait Clock {
    fn now_ns(&self) -> u64;
}

/// Clock that always reads zero; timings in stats become zeros.
#[derive(Debug, Clone, Copy, Default)]
pub struct NullClock;

impl Clock for NullClock {
    fn now_ns(&self) -> u64 {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serial_executor_visits_every_slot_once() {
        let mut states = alloc::vec![0u32; 5];
        SerialExecutor.scope(&mut states, |w, s| *s += w as u32 + 1);
        assert_eq!(states, alloc::vec![1, 2, 3, 4, 5]);
    }
}
