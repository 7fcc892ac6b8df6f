//! Analytic occupancy and kernel-fusion planning.
//!
//! Everything here is hardware-agnostic arithmetic plus a discrete
//! simulation: register costs are inputs (in reality they come from compiler
//! reports), occupancy follows from the register-file budget, and the
//! software global barrier is modeled as a reachability question: a fused
//! kernel either completes its rounds or deadlocks, timing never enters.

mod barrier;
mod occupancy;
mod plan;

pub use barrier::{simulate_barrier, BarrierOutcome};
pub use occupancy::max_resident_ctas;
pub use plan::{
    annotate_plan, fused_register_cost, plan_fusion, AnnotatedLaunch, AnnotatedPlan, CostMode,
    FusedCost, FusionPlan, FusionStrategy, KernelLaunch, Launch,
};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

/// Per-device register and SMX parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeviceProfile {
    pub registers_per_smx: u32,
    pub smx_count: u32,
    pub threads_per_cta: u32,
}

impl DeviceProfile {
    /// K40-class profile: 65,536 registers per SMX, 15 SMXs.
    pub fn k40() -> Self {
        DeviceProfile {
            registers_per_smx: 65_536,
            smx_count: 15,
            threads_per_cta: 128,
        }
    }

    /// K20-class profile: 32,768 registers per SMX, 13 SMXs.
    pub fn k20() -> Self {
        DeviceProfile {
            registers_per_smx: 32_768,
            smx_count: 13,
            threads_per_cta: 128,
        }
    }

    /// Parses `key=value` lines: `registers_per_smx`, `smx_count`,
    /// `threads_per_cta`. `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Self, FusionError> {
        let mut profile = DeviceProfile::k40();
        let mut seen = 0u8;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = split_kv(trimmed, line)?;
            let value: u32 = value.parse().map_err(|_| FusionError::Parse {
                line,
                reason: format!("bad count '{value}'"),
            })?;
            if value == 0 {
                return Err(FusionError::Parse {
                    line,
                    reason: "profile values must be positive".to_string(),
                });
            }
            match key {
                "registers_per_smx" => {
                    profile.registers_per_smx = value;
                    seen |= 1;
                }
                "smx_count" => {
                    profile.smx_count = value;
                    seen |= 2;
                }
                "threads_per_cta" => {
                    profile.threads_per_cta = value;
                    seen |= 4;
                }
                other => {
                    return Err(FusionError::Parse {
                        line,
                        reason: format!("unknown profile key '{other}'"),
                    })
                }
            }
        }
        if seen & 3 != 3 {
            return Err(FusionError::Parse {
                line: 0,
                reason: "profile needs registers_per_smx and smx_count".to_string(),
            });
        }
        Ok(profile)
    }
}

/// A kernel and its per-thread register consumption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCost {
    pub name: String,
    pub registers_per_thread: u32,
}

impl KernelCost {
    pub fn new(name: &str, registers_per_thread: u32) -> Self {
        KernelCost {
            name: name.to_string(),
            registers_per_thread,
        }
    }
}

/// Kernel names used by the planner.
pub mod kernel_names {
    use crate::acc::Direction;

    pub const ALL_FUSED: &str = "all_fused";

    pub fn fused(direction: Direction) -> &'static str {
        match direction {
            Direction::Push => "push_fused",
            Direction::Pull => "pull_fused",
        }
    }

    /// The four per-iteration kernels of the unfused path: one per task
    /// granularity plus task management.
    pub fn unfused(direction: Direction) -> [&'static str; 4] {
        match direction {
            Direction::Push => ["push_thread", "push_warp", "push_cta", "push_task_mgmt"],
            Direction::Pull => ["pull_thread", "pull_warp", "pull_cta", "pull_task_mgmt"],
        }
    }
}

/// Register costs per kernel name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostTable {
    entries: BTreeMap<String, u32>,
}

impl Default for CostTable {
    /// Measured defaults for every kernel the planner references.
    fn default() -> Self {
        let mut entries = BTreeMap::new();
        for (name, regs) in [
            ("push_thread", 26),
            ("push_warp", 27),
            ("push_cta", 28),
            ("push_task_mgmt", 24),
            ("pull_thread", 24),
            ("pull_warp", 24),
            ("pull_cta", 22),
            ("pull_task_mgmt", 30),
            ("push_fused", 48),
            ("pull_fused", 50),
            ("all_fused", 110),
        ] {
            entries.insert(name.to_string(), regs);
        }
        CostTable { entries }
    }
}

impl CostTable {
    pub fn empty() -> Self {
        CostTable {
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, name: &str, registers_per_thread: u32) {
        self.entries.insert(name.to_string(), registers_per_thread);
    }

    pub fn get(&self, name: &str) -> Result<KernelCost, FusionError> {
        self.entries
            .get(name)
            .map(|&regs| KernelCost::new(name, regs))
            .ok_or_else(|| FusionError::UnknownKernel(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Parses `kernel_name=registers` lines on top of the defaults, so a file
    /// may override any subset.
    pub fn parse_text(text: &str) -> Result<Self, FusionError> {
        let mut table = CostTable::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = split_kv(trimmed, line)?;
            let regs: u32 = value.parse().map_err(|_| FusionError::Parse {
                line,
                reason: format!("bad register count '{value}'"),
            })?;
            if regs == 0 {
                return Err(FusionError::Parse {
                    line,
                    reason: "register count must be positive".to_string(),
                });
            }
            table.set(key, regs);
        }
        Ok(table)
    }
}

fn split_kv(line: &str, line_no: usize) -> Result<(&str, &str), FusionError> {
    line.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| FusionError::Parse {
            line: line_no,
            reason: format!("expected key=value, got '{line}'"),
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FusionError {
    /// The kernel's threads cannot fit a single CTA into one SMX's registers.
    ZeroOccupancy { kernel: String },
    UnknownKernel(String),
    Parse { line: usize, reason: String },
}

impl fmt::Display for FusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionError::ZeroOccupancy { kernel } => write!(
                f,
                "kernel '{kernel}' exceeds per-SMX register capacity at this CTA width"
            ),
            FusionError::UnknownKernel(name) => write!(f, "no register cost for kernel '{name}'"),
            FusionError::Parse { line, reason } => write!(f, "parse error on line {line}: {reason}"),
        }
    }
}

impl core::error::Error for FusionError {}
