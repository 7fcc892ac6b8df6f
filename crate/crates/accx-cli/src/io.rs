//! File front-ends for the text edge-list and binary graph formats, device
//! profiles, cost tables, and phase traces.

use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};

use accx_core::acc::Direction;
use accx_core::fusion::{CostTable, DeviceProfile};
use accx_core::graph::{decode_csr, encode_csr, CsrGraph, EdgeList};

/// A loaded graph plus how long loading took (reported separately from the
/// run timing).
pub struct LoadedGraph {
    pub graph: CsrGraph,
    pub load_ns: u64,
}

/// Loads a graph from either format: files starting with the `ACCX` magic
/// decode as binary, anything else parses as a text edge list with
/// `directed` deciding edge interpretation.
pub fn load_graph(path: &Path, directed: bool, build_reverse: bool) -> Result<LoadedGraph> {
    let start = Instant::now();
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let mut graph = if bytes.starts_with(b"ACCX") {
        decode_csr(&bytes).with_context(|| format!("decoding {}", path.display()))?
    } else {
        let text = String::from_utf8(bytes)
            .with_context(|| format!("{} is neither ACCX binary nor UTF-8 text", path.display()))?;
        let el = EdgeList::parse_text(&text, directed)
            .with_context(|| format!("parsing {}", path.display()))?;
        CsrGraph::from_edge_list(&el, build_reverse)?
    };
    if build_reverse {
        graph.ensure_reverse();
    }
    Ok(LoadedGraph { graph, load_ns: start.elapsed().as_nanos() as u64 })
}

pub fn save_graph(graph: &CsrGraph, path: &Path) -> Result<()> {
    fs::write(path, encode_csr(graph)).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn load_profile(path: &Path) -> Result<DeviceProfile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(DeviceProfile::parse_text(&text)?)
}

pub fn load_cost_table(path: &Path) -> Result<CostTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(CostTable::parse_text(&text)?)
}

/// Reads the `direction` column of a run-trace CSV back into a phase
/// sequence.
pub fn load_phase_trace(path: &Path) -> Result<Vec<Direction>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut lines = text.lines();
    let header = lines.next().context("empty trace file")?;
    let direction_col = header
        .split(',')
        .position(|name| name.trim() == "direction")
        .context("trace file has no 'direction' column")?;
    let mut phases = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let field = line
            .split(',')
            .nth(direction_col)
            .with_context(|| format!("trace row {} is short", idx + 2))?;
        match field.trim() {
            "push" => phases.push(Direction::Push),
            "pull" => phases.push(Direction::Pull),
            other => bail!("trace row {}: unknown direction '{other}'", idx + 2),
        }
    }
    if phases.is_empty() {
        bail!("trace file contains no phase rows");
    }
    Ok(phases)
}

/// Parses a `push,pull,push` style phase list.
pub fn parse_phase_list(text: &str) -> Result<Vec<Direction>> {
    let mut phases = Vec::new();
    for token in text.split(',') {
        match token.trim() {
            "push" => phases.push(Direction::Push),
            "pull" => phases.push(Direction::Pull),
            other => bail!("unknown direction '{other}' (expected push or pull)"),
        }
    }
    if phases.is_empty() {
        bail!("empty phase list");
    }
    Ok(phases)
}
