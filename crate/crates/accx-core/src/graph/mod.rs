//! Graph ingestion and storage: edge lists, CSR construction, weight
//! generation, the `ACCX` binary encoding, and synthetic generators.

mod binary;
mod csr;
mod edge_list;
mod gen;
mod weights;

pub use binary::{decode_csr, encode_csr};
pub use csr::CsrGraph;
pub use edge_list::{Edge, EdgeList};
pub use gen::{rmat_edge_list, uniform_edge_list, RmatParams};

use alloc::string::String;
use core::fmt;

/// Dense vertex identifier in `[0, vertex_count)`.
pub type VertexId = u32;

/// Errors raised by graph construction, parsing, and persistence.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    /// A text edge-list line could not be parsed (1-based line number).
    MalformedLine { line: usize, reason: String },
    /// A vertex id does not fit in 32 bits (1-based line number).
    VertexIdOverflow { line: usize },
    /// A negative or non-finite edge weight (1-based line number).
    InvalidWeight { line: usize },
    /// Weight-generation range is empty or negative.
    InvalidWeightRange,
    /// An edge endpoint is outside `[0, vertex_count)`.
    VertexOutOfRange { vertex: u64, vertex_count: u64 },
    /// Binary input does not start with the `ACCX` magic.
    BadMagic,
    /// Binary input has an unsupported format version.
    UnsupportedVersion(u32),
    /// Binary input ended before all declared payload was read.
    Truncated,
    /// Binary payload is structurally inconsistent.
    ShapeMismatch(&'static str),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::MalformedLine { line, reason } => {
                write!(f, "malformed edge-list line {line}: {reason}")
            }
            GraphError::VertexIdOverflow { line } => {
                write!(f, "vertex id on line {line} exceeds the 32-bit id space")
            }
            GraphError::InvalidWeight { line } => {
                write!(f, "negative or non-finite edge weight on line {line}")
            }
            GraphError::InvalidWeightRange => {
                write!(f, "weight range is empty: require 0 <= lo < hi")
            }
            GraphError::VertexOutOfRange {
                vertex,
                vertex_count,
            } => write!(f, "vertex {vertex} out of range (vertex_count {vertex_count})"),
            GraphError::BadMagic => write!(f, "not an ACCX file: bad magic"),
            GraphError::UnsupportedVersion(v) => write!(f, "unsupported ACCX version {v}"),
            GraphError::Truncated => write!(f, "truncated ACCX payload"),
            GraphError::ShapeMismatch(what) => write!(f, "ACCX shape mismatch: {what}"),
        }
    }
}

impl core::error::Error for GraphError {}
