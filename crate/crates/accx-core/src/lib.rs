//! Core of the `accx` graph-analytics engine.
//!
//! The crate is organized around five pieces:
//!
//! - [`graph`]: edge-list ingestion, CSR construction (forward and reverse),
//!   deterministic weight generation, the `ACCX` binary encoding, and
//!   synthetic graph generators.
//! - [`acc`]: the Active/Compute/Combine programming abstraction that
//!   algorithms implement and the engine executes.
//! - [`task`]: just-in-time frontier management. Online, ballot, and batch
//!   filters, degree classification, and the JIT controller.
//! - [`engine`]: the bulk-synchronous execution loop with push/pull phases,
//!   granularity-matched task scheduling, and race-free combining.
//! - [`fusion`]: the analytic occupancy model, the software global-barrier
//!   simulation, and kernel-fusion launch planning.
//! - [`algorithms`]: BFS, SSSP, k-core, PageRank, and belief propagation,
//!   each paired with a sequential reference implementation.
//!
//! The crate is `no_std` + `alloc`; everything that touches files, clocks,
//! or OS threads lives in the companion `accx-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod acc;
pub mod algorithms;
pub mod engine;
pub mod fusion;
pub mod graph;
pub mod task;

pub use graph::{CsrGraph, EdgeList};
