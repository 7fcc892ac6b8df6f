//! The `ACCX` binary graph format.
//!
//! Layout (all little-endian):
//!
//! ```text
//! magic   "ACCX"                        4 bytes
//! version u32                           currently 1
//! flags   u32                           bit0 weighted, bit1 has-reverse, bit2 directed
//! vertex_count u64
//! edge_count   u64
//! out_offsets  u64 x (vertex_count + 1)
//! out_neighbors u32 x edge_count
//! out_weights  f32 x edge_count         iff weighted
//! in_offsets / in_neighbors / in_weights  same shapes, iff has-reverse
//! ```

use alloc::vec::Vec;

use super::{CsrGraph, GraphError};

pub const MAGIC: [u8; 4] = *b"ACCX";
pub const VERSION: u32 = 1;

const FLAG_WEIGHTED: u32 = 1 << 0;
const FLAG_REVERSE: u32 = 1 << 1;
const FLAG_DIRECTED: u32 = 1 << 2;

/// Serializes a graph to the `ACCX` byte layout.
pub fn encode_csr(g: &CsrGraph) -> Vec<u8> {
    let (out_offsets, out_neighbors, out_weights) = g.out_parts();
    let weighted = g.weighted();
    let reverse = g.in_parts();

    let mut flags = 0u32;
    if weighted {
        flags |= FLAG_WEIGHTED;
    }
    if reverse.is_some() {
        flags |= FLAG_REVERSE;
    }
    if g.directed() {
        flags |= FLAG_DIRECTED;
    }

    let mut buf = Vec::with_capacity(
        4 + 4 + 4 + 8 + 8 + out_offsets.len() * 8 + out_neighbors.len() * (4 + 4),
    );
    buf.extend_from_slice(&MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&flags.to_le_bytes());
    buf.extend_from_slice(&u64::from(g.vertex_count()).to_le_bytes());
    buf.extend_from_slice(&g.edge_count().to_le_bytes());

    let write_arrays = |buf: &mut Vec<u8>, offsets: &[u64], neighbors: &[u32], weights: &[f32]| {
        for o in offsets {
            buf.extend_from_slice(&o.to_le_bytes());
        }
        for nb in neighbors {
            buf.extend_from_slice(&nb.to_le_bytes());
        }
        if weighted {
            for w in weights {
                buf.extend_from_slice(&w.to_le_bytes());
            }
        }
    };
    write_arrays(&mut buf, out_offsets, out_neighbors, out_weights);
    if let Some((o, nb, w)) = reverse {
        write_arrays(&mut buf, o, nb, w);
    }
    buf
}

/// Parses and validates an `ACCX` byte buffer.
pub fn decode_csr(bytes: &[u8]) -> Result<CsrGraph, GraphError> {
    let mut r = Reader { bytes, at: 0 };
    if r.take(4)? != MAGIC {
        return Err(GraphError::BadMagic);
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(GraphError::UnsupportedVersion(version));
    }
    let flags = r.u32()?;
    let weighted = flags & FLAG_WEIGHTED != 0;
    let has_reverse = flags & FLAG_REVERSE != 0;
    let directed = flags & FLAG_DIRECTED != 0;
    let vertex_count = r.u64()?;
    let edge_count = r.u64()?;
    let n = u32::try_from(vertex_count)
        .map_err(|_| GraphError::ShapeMismatch("vertex_count exceeds 2^32"))?;

    // Check the declared sizes against the bytes actually present before
    // allocating anything, so a corrupt header cannot demand huge buffers.
    let structures = if has_reverse { 2u64 } else { 1 };
    let per_edge = if weighted { 8u64 } else { 4 };
    let declared = (vertex_count + 1)
        .checked_mul(8)
        .and_then(|o| edge_count.checked_mul(per_edge).map(|e| o + e))
        .and_then(|b| b.checked_mul(structures))
        .ok_or(GraphError::Truncated)?;
    let remaining = (bytes.len() - r.at) as u64;
    if declared > remaining {
        return Err(GraphError::Truncated);
    }

    let read_arrays = |r: &mut Reader| -> Result<Arrays, GraphError> {
        let mut offsets = Vec::with_capacity(vertex_count as usize + 1);
        for _ in 0..=vertex_count {
            offsets.push(r.u64()?);
        }
        let mut neighbors = Vec::with_capacity(edge_count as usize);
        for _ in 0..edge_count {
            neighbors.push(r.u32()?);
        }
        let weights = if weighted {
            let mut w = Vec::with_capacity(edge_count as usize);
            for _ in 0..edge_count {
                w.push(f32::from_le_bytes(r.take(4)?.try_into().unwrap()));
            }
            w
        } else {
            alloc::vec![super::csr::DEFAULT_WEIGHT; edge_count as usize]
        };
        Ok((offsets, neighbors, weights))
    };

    let forward = read_arrays(&mut r)?;
    let reverse = if has_reverse {
        Some(read_arrays(&mut r)?)
    } else {
        None
    };
    if r.at != bytes.len() {
        return Err(GraphError::ShapeMismatch("trailing bytes after payload"));
    }

    CsrGraph::from_parts(
        directed,
        weighted,
        n,
        forward.0,
        forward.1,
        forward.2,
        reverse,
    )
}

type Arrays = (Vec<u64>, Vec<u32>, Vec<f32>);

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8], GraphError> {
        let end = self.at.checked_add(len).ok_or(GraphError::Truncated)?;
        if end > self.bytes.len() {
            return Err(GraphError::Truncated);
        }
        let out = &self.bytes[self.at..end];
        self.at = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32, GraphError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, GraphError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, EdgeList};

    fn triangle() -> CsrGraph {
        let el = EdgeList::parse_text("0 1 2\n1 2 3\n0 2 4\n", false).unwrap();
        CsrGraph::from_edge_list(&el, false).unwrap()
    }

    #[test]
    fn round_trip_triangle() {
        let g = triangle();
        let bytes = encode_csr(&g);
        assert_eq!(&bytes[..4], b"ACCX");
        let back = decode_csr(&bytes).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn round_trip_directed_with_reverse_unweighted() {
        let el = EdgeList::new(
            true,
            vec![
                Edge { src: 0, dst: 1, weight: None },
                Edge { src: 2, dst: 1, weight: None },
                Edge { src: 2, dst: 0, weight: None },
            ],
        );
        let g = CsrGraph::from_edge_list(&el, true).unwrap();
        let back = decode_csr(&encode_csr(&g)).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn truncated_payload_rejected() {
        let bytes = encode_csr(&triangle());
        let cut = &bytes[..bytes.len() - 3];
        assert_eq!(decode_csr(cut), Err(GraphError::Truncated));
    }

    #[test]
    fn bad_magic_rejected() {
        let mut bytes = encode_csr(&triangle());
        bytes[0] = b'X';
        assert_eq!(decode_csr(&bytes), Err(GraphError::BadMagic));
    }

    #[test]
    fn trailing_bytes_rejected() {
        let mut bytes = encode_csr(&triangle());
        bytes.push(0);
        assert!(matches!(decode_csr(&bytes), Err(GraphError::ShapeMismatch(_))));
    }

    #[test]
    fn oversized_declared_counts_rejected_before_allocation() {
        let mut bytes = encode_csr(&triangle());
        // Corrupt the vertex-count field (offset 12) to claim 2^40 vertices.
        bytes[12..20].copy_from_slice(&(1u64 << 40).to_le_bytes());
        assert!(decode_csr(&bytes).is_err());
        // And an edge count far beyond the payload (offset 20).
        let mut bytes = encode_csr(&triangle());
        bytes[20..28].copy_from_slice(&u64::MAX.to_le_bytes());
        assert_eq!(decode_csr(&bytes), Err(GraphError::Truncated));
    }

    #[test]
    fn corrupted_reverse_rejected() {
        let el = EdgeList::new(
            true,
            vec![
                Edge { src: 0, dst: 1, weight: None },
                Edge { src: 1, dst: 2, weight: None },
            ],
        );
        let g = CsrGraph::from_edge_list(&el, true).unwrap();
        let mut bytes = encode_csr(&g);
        // Flip the last in-neighbor id to break the transpose property while
        // keeping all ranges structurally valid.
        let len = bytes.len();
        bytes[len - 4..].copy_from_slice(&2u32.to_le_bytes());
        assert!(matches!(decode_csr(&bytes), Err(GraphError::ShapeMismatch(_))));
    }
}
