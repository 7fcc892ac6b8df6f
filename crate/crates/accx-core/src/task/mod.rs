//! Just-in-time task management: per-worker recording bins, degree-classified
//! active lists, the online/ballot/batch filters, and the controller that
//! picks a filter each iteration.

mod ballot;
mod batch;
mod bin;
mod concat;
mod jit;
mod lists;

pub use ballot::{ballot_filter, worker_ranges};
pub use batch::{batch_filter, BatchOverflowError};
pub use bin::{RecordOutcome, ThreadBin};
pub use concat::{bin_offsets, concat_bins, OverflowedBinError};
pub use jit::{FilterKind, JitController, JitTraceRow};
pub use lists::{ActiveLists, DegreeClass, Separators};

/// Default per-bin overflow threshold.
pub const DEFAULT_OVERFLOW_THRESHOLD: usize = 64;
