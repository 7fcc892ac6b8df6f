//! Discrete simulation of the monitor/worker software global barrier.

use alloc::vec::Vec;

/// Result of running a fused kernel's barrier protocol to quiescence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarrierOutcome {
    Completed { rounds: u32 },
    Deadlocked { at_round: u32 },
}

#[derive(Clone, Copy, PartialEq)]
enum Phase {
    Computing,
    Arrived,
    Exited,
}

/// Simulates `launched_ctas` CTAs synchronizing through a lock array for
/// `barrier_rounds` rounds, with CTA 0 acting as the monitor (and occupying a
/// residency slot like any other CTA).
///
/// Protocol per round: each *resident* CTA finishes its compute slice and
/// marks arrival in the lock array, then spins. Once every launched CTA has
/// arrived, and only if the monitor itself is resident, the monitor flips
/// all statuses to departure and everyone proceeds to the next round. A CTA
/// that was not scheduled at launch becomes resident only when a slot frees,
/// and slots free only when a resident CTA exits the kernel, which it cannot
/// do while spinning at a barrier. Hence launching more CTAs than the
/// resident capacity deadlocks at the first barrier round.
pub fn simulate_barrier(
    launched_ctas: u32,
    resident_capacity: u32,
    barrier_rounds: u32,
) -> BarrierOutcome {
    assert!(launched_ctas >= 1, "need at least the monitor CTA");
    assert!(barrier_rounds >= 1);

    let n = launched_ctas as usize;
    let mut phase = alloc::vec![Phase::Computing; n];
    let mut round = alloc::vec![1u32; n];
    // Hardware schedules CTAs in launch order until the register file is full.
    let mut resident: Vec<bool> = (0..n).map(|i| (i as u32) < resident_capacity).collect();

    loop {
        let mut progress = false;

        // Free slots admit waiting CTAs in launch order.
        let mut live = resident
            .iter()
            .zip(phase.iter())
            .filter(|(r, p)| **r && **p != Phase::Exited)
            .count() as u32;
        for i in 0..n {
            if !resident[i] && phase[i] != Phase::Exited && live < resident_capacity {
                resident[i] = true;
                live += 1;
                progress = true;
            }
        }

        // Resident CTAs reach the barrier and mark arrival.
        for i in 0..n {
            if resident[i] && phase[i] == Phase::Computing {
                phase[i] = Phase::Arrived;
                progress = true;
            }
        }

        // The monitor departs everyone once the whole launch has arrived.
        let all_arrived = phase.iter().all(|p| *p == Phase::Arrived);
        if all_arrived && resident[0] {
            for i in 0..n {
                if round[i] == barrier_rounds {
                    phase[i] = Phase::Exited;
                    resident[i] = false;
                } else {
                    round[i] += 1;
                    phase[i] = Phase::Computing;
                }
            }
            progress = true;
        }

        if phase.iter().all(|p| *p == Phase::Exited) {
            return BarrierOutcome::Completed {
                rounds: barrier_rounds,
            };
        }
        if !progress {
            let stuck = phase
                .iter()
                .zip(round.iter())
                .filter(|(p, _)| **p != Phase::Exited)
                .map(|(_, r)| *r)
                .min()
                .unwrap_or(1);
            return BarrierOutcome::Deadlocked { at_round: stuck };
        }
    }
}
