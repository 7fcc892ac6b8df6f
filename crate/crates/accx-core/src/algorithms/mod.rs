//! The five built-in algorithms, each expressed against the
//! Active/Compute/Combine trait, plus sequential reference implementations
//! used for verification.

mod bfs;
mod bp;
mod kcore;
mod pagerank;
pub mod reference;
mod sssp;

pub use bfs::{Bfs, UNVISITED};
pub use bp::{BeliefPropagation, BpMeta, Priors};
pub use kcore::{KCore, KCoreMeta, ALIVE};
pub use pagerank::{PageRank, PrMeta};
pub use sssp::Sssp;
