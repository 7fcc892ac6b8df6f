//! Launch planning for the three fusion strategies.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::barrier::{simulate_barrier, BarrierOutcome};
use super::occupancy::max_resident_ctas;
use super::{kernel_names, CostTable, DeviceProfile, FusionError, KernelCost};
use crate::acc::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FusionStrategy {
    /// Four kernels (thread, warp, CTA, task management) relaunched every
    /// iteration.
    None,
    /// One fused kernel per maximal run of equal-direction iterations.
    Selective,
    /// The whole computation in a single fused kernel.
    All,
}

impl core::fmt::Display for FusionStrategy {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            FusionStrategy::None => "none",
            FusionStrategy::Selective => "selective",
            FusionStrategy::All => "all",
        })
    }
}

/// One planned launch group: the kernels involved, the phase direction (for
/// unfused and selective groups), how many iterations the group covers, and
/// how many kernel launches it costs.
#[derive(Debug, Clone, PartialEq)]
pub struct Launch {
    pub direction: Option<Direction>,
    pub iterations: u64,
    pub kernels: Vec<String>,
    pub launch_count: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FusionPlan {
    pub strategy: FusionStrategy,
    pub launch_count: u64,
    pub launches: Vec<Launch>,
}

/// Derives launch groups from a per-iteration direction sequence.
///
/// - `None`: every iteration costs four launches.
/// - `Selective`: one launch per maximal run of equal direction, i.e.
///   `1 + number of direction changes`.
/// - `All`: one launch total.
pub fn plan_fusion(phases: &[Direction], strategy: FusionStrategy) -> FusionPlan {
    assert!(!phases.is_empty(), "phase sequence must be non-empty");
    let mut launches = Vec::new();
    match strategy {
        FusionStrategy::All => {
            launches.push(Launch {
                direction: None,
                iterations: phases.len() as u64,
                kernels: alloc::vec![kernel_names::ALL_FUSED.to_string()],
                launch_count: 1,
            });
        }
        FusionStrategy::Selective => {
            for (dir, len) in direction_runs(phases) {
                launches.push(Launch {
                    direction: Some(dir),
                    iterations: len,
                    kernels: alloc::vec![kernel_names::fused(dir).to_string()],
                    launch_count: 1,
                });
            }
        }
        FusionStrategy::None => {
            for (dir, len) in direction_runs(phases) {
                let kernels: Vec<String> = kernel_names::unfused(dir)
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                launches.push(Launch {
                    direction: Some(dir),
                    iterations: len,
                    kernels,
                    launch_count: 4 * len,
                });
            }
        }
    }
    let launch_count = launches.iter().map(|l| l.launch_count).sum();
    FusionPlan {
        strategy,
        launch_count,
        launches,
    }
}

fn direction_runs(phases: &[Direction]) -> Vec<(Direction, u64)> {
    let mut runs: Vec<(Direction, u64)> = Vec::new();
    for &d in phases {
        match runs.last_mut() {
            Some((dir, len)) if *dir == d => *len += 1,
            _ => runs.push((d, 1)),
        }
    }
    runs
}

/// A kernel launch with its occupancy and, for fused (persistent) kernels,
/// the barrier verdict at that occupancy.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelLaunch {
    pub kernel: String,
    pub registers_per_thread: u32,
    pub cta_count: u32,
    pub barrier: Option<BarrierOutcome>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedLaunch {
    pub direction: Option<Direction>,
    pub iterations: u64,
    pub kernels: Vec<KernelLaunch>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedPlan {
    pub strategy: FusionStrategy,
    pub launch_count: u64,
    pub launches: Vec<AnnotatedLaunch>,
}

/// Attaches register costs, resident-CTA counts, and barrier verdicts to a
/// plan. Fused kernels are persistent and synchronize through the software
/// barrier, so they get a verdict from simulating one round per covered
/// iteration; unfused kernels end at every iteration boundary and need none.
///
/// `override_launched` forces the launched-CTA count of fused kernels away
/// from the computed occupancy, to demonstrate the deadlock condition.
pub fn annotate_plan(
    plan: &FusionPlan,
    profile: &DeviceProfile,
    costs: &CostTable,
    override_launched: Option<u32>,
) -> Result<AnnotatedPlan, FusionError> {
    let fused = !matches!(plan.strategy, FusionStrategy::None);
    let mut launches = Vec::with_capacity(plan.launches.len());
    for launch in &plan.launches {
        let mut kernels = Vec::with_capacity(launch.kernels.len());
        for name in &launch.kernels {
            let cost = costs.get(name)?;
            let cta_count = max_resident_ctas(profile, &cost)?;
            let barrier = fused.then(|| {
                let launched = override_launched.unwrap_or(cta_count);
                let rounds = u32::try_from(launch.iterations).unwrap_or(u32::MAX).max(1);
                simulate_barrier(launched, cta_count, rounds)
            });
            kernels.push(KernelLaunch {
                kernel: cost.name,
                registers_per_thread: cost.registers_per_thread,
                cta_count,
                barrier,
            });
        }
        launches.push(AnnotatedLaunch {
            direction: launch.direction,
            iterations: launch.iterations,
            kernels,
        });
    }
    Ok(AnnotatedPlan {
        strategy: plan.strategy,
        launch_count: plan.launch_count,
        launches,
    })
}

/// How to price a fused kernel's register consumption.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostMode {
    /// A compiler-reported value supplied by the caller.
    Measured(u32),
    /// Estimate from the component kernels.
    SumBound,
}

/// A register estimate with its bracketing bounds: a fused kernel needs at
/// least the largest component and at most the sum of all components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FusedCost {
    pub registers_per_thread: u32,
    pub lower_bound: u32,
    pub upper_bound: u32,
    pub measured: bool,
}

/// Prices a fused kernel from its components. `Measured` passes the caller's
/// compiler-reported value through; `SumBound` reports the sum as a safe
/// upper-bound estimate, with the `max <= true cost <= sum` bracket attached.
pub fn fused_register_cost(kernels: &[KernelCost], mode: CostMode) -> FusedCost {
    assert!(!kernels.is_empty(), "need at least one kernel");
    let max = kernels
        .iter()
        .map(|k| k.registers_per_thread)
        .max()
        .unwrap();
    let sum = kernels.iter().map(|k| k.registers_per_thread).sum();
    match mode {
        CostMode::Measured(v) => FusedCost {
            registers_per_thread: v,
            lower_bound: max,
            upper_bound: sum,
            measured: true,
        },
        CostMode::SumBound => FusedCost {
            registers_per_thread: sum,
            lower_bound: max,
            upper_bound: sum,
            measured: false,
        },
    }
}
