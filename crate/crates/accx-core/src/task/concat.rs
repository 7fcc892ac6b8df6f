//! Prefix-scan concatenation of per-worker bins.

use alloc::vec::Vec;
use core::fmt;

use super::bin::ThreadBin;
use super::lists::{ActiveLists, Separators};
use crate::graph::VertexId;

/// `concat_bins` was invoked on an overflowed bin; the controller should have
/// routed this iteration to the ballot filter instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverflowedBinError {
    pub owner: usize,
}

impl fmt::Display for OverflowedBinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "concat_bins called with overflowed bin of worker {}", self.owner)
    }
}

impl core::error::Error for OverflowedBinError {}

/// Exclusive prefix scan over bin sizes: entry `i` is the output offset of
/// bin `i` in the concatenated list.
pub fn bin_offsets(bins: &[ThreadBin]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(bins.len());
    let mut total = 0;
    for bin in bins {
        offsets.push(total);
        total += bin.len();
    }
    offsets
}

/// Concatenates bin entries in bin order, classifying each entry by degree.
/// Duplicates are preserved. Errors if any bin overflowed.
pub fn concat_bins(
    bins: &[ThreadBin],
    degree_of: impl Fn(VertexId) -> usize,
    seps: Separators,
) -> Result<ActiveLists, OverflowedBinError> {
    if let Some(bad) = bins.iter().find(|b| b.overflowed()) {
        return Err(OverflowedBinError { owner: bad.owner() });
    }
    let offsets = bin_offsets(bins);
    let total = offsets.last().copied().unwrap_or(0) + bins.last().map_or(0, |b| b.len());
    let mut flat = Vec::with_capacity(total);
    for bin in bins {
        flat.extend_from_slice(bin.entries());
    }
    let mut lists = ActiveLists::new();
    for v in flat {
        lists.push(v, degree_of(v), seps);
    }
    Ok(lists)
}
