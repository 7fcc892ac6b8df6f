//! Text edge lists: the ingestion format for everything else.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{GraphError, VertexId};

/// One parsed edge. `weight` is `None` for unweighted input; CSR construction
/// substitutes the default weight 1 so weighted algorithms run on any graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: Option<f32>,
}

/// An edge list plus its directedness. For undirected lists each entry is one
/// logical edge; both directions are materialized at CSR build time.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    directed: bool,
    vertex_count: u32,
    edges: Vec<Edge>,
}

impl EdgeList {
    /// Builds an edge list, inferring `vertex_count` as one past the largest
    /// endpoint. Duplicate edges and self-loops are kept as given.
    pub fn new(directed: bool, edges: Vec<Edge>) -> Self {
        let vertex_count = edges
            .iter()
            .map(|e| e.src.max(e.dst) as u64 + 1)
            .max()
            .unwrap_or(0) as u32;
        EdgeList {
            directed,
            vertex_count,
            edges,
        }
    }

    /// Raises the vertex count to include trailing isolated vertices.
    /// Errors if `vertex_count` would drop below an existing endpoint.
    pub fn with_vertex_count(mut self, vertex_count: u32) -> Result<Self, GraphError> {
        if vertex_count < self.vertex_count {
            return Err(GraphError::VertexOutOfRange {
                vertex: u64::from(self.vertex_count) - 1,
                vertex_count: u64::from(vertex_count),
            });
        }
        self.vertex_count = vertex_count;
        Ok(self)
    }

    /// Parses the plain-text format: one `src dst [weight]` triple per line,
    /// `#` or `%` starting a comment line, blank lines ignored.
    ///
    /// Errors carry the 1-based line number of the offending line.
    pub fn parse_text(text: &str, directed: bool) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let src = parse_vertex(fields.next(), line)?;
            let dst = parse_vertex(fields.next(), line)?;
            let weight = match fields.next() {
                None => None,
                Some(tok) => {
                    let w: f32 = tok.parse().map_err(|_| GraphError::MalformedLine {
                        line,
                        reason: format!("bad weight token '{tok}'"),
                    })?;
                    if !w.is_finite() || w < 0.0 {
                        return Err(GraphError::InvalidWeight { line });
                    }
                    Some(w)
                }
            };
            if fields.next().is_some() {
                return Err(GraphError::MalformedLine {
                    line,
                    reason: format!("expected 'src dst [weight]', got '{trimmed}'"),
                });
            }
            edges.push(Edge { src, dst, weight });
        }
        Ok(EdgeList::new(directed, edges))
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// True when any edge carries an explicit weight.
    pub fn has_weights(&self) -> bool {
        self.edges.iter().any(|e| e.weight.is_some())
    }
}

fn parse_vertex(tok: Option<&str>, line: usize) -> Result<VertexId, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::MalformedLine {
        line,
        reason: "missing vertex id".to_string(),
    })?;
    let wide: u64 = tok.parse().map_err(|_| GraphError::MalformedLine {
        line,
        reason: format!("bad vertex id '{tok}'"),
    })?;
    VertexId::try_from(wide).map_err(|_| GraphError::VertexIdOverflow { line })
}
