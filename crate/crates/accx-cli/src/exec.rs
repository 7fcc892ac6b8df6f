//! OS-thread executor and wall clock.

use std::time::Instant;

use accx_core::engine::{Clock, Executor};

/// Runs each worker slot on its own scoped thread. Logical worker counts are
/// small (they size bins and scan ranges), so one thread per slot is the
/// right grain.
#[derive(Debug, Clone, Copy, Default)]
pub struct ThreadExecutor;

impl Executor for ThreadExecutor {
    fn scope<S: Send, F: Fn(usize, &mut S) + Sync>(&self, states: &mut [S], job: F) {
        if states.len() <= 1 {
            for (w, state) in states.iter_mut().enumerate() {
                job(w, state);
            }
            return;
        }
        std::thread::scope(|scope| {
            for (w, state) in states.iter_mut().enumerate() {
                let job = &job;
                scope.spawn(move || job(w, state));
            }
        });
    }
}

/// Monotonic clock anchored at construction.
pub struct StdClock {
    origin: Instant,
}

impl StdClock {
    pub fn new() -> Self {
        StdClock { origin: Instant::now() }
    }
}

impl Default for StdClock {
    fn default() -> Self {
        StdClock::new()
    }
}

impl Clock for StdClock {
    fn now_ns(&self) -> u64 {
        self.origin.elapsed().as_nanos() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_executor_matches_serial_results() {
        use accx_core::engine::SerialExecutor;
        let mut a: Vec<u64> = (0..8).collect();
        let mut b = a.clone();
        ThreadExecutor.scope(&mut a, |w, s| *s = *s * 3 + w as u64);
        SerialExecutor.scope(&mut b, |w, s| *s = *s * 3 + w as u64);
        assert_eq!(a, b);
    }

    #[test]
    fn clock_is_monotone() {
        let clock = StdClock::new();
        let a = clock.now_ns();
        let b = clock.now_ns();
        assert!(b >= a);
    }
}
