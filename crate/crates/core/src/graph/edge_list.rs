use std::collections::BTreeMap;

use super::{Graph, GraphError};

/// Result of parsing an edge-list document.
#[derive(Debug, Clone)]
pub struct ParsedEdgeList {
    pub graph: Graph,
    /// Number of duplicate edge lines that were collapsed.
    pub duplicates_collapsed: usize,
}

/// Parses the canonical edge-list interchange format.
///
/// One edge per line as two whitespace-separated nonnegative integers; blank
/// lines and `#` comments are ignored; CRLF is accepted. Vertex ids need not
/// be contiguous: they are compacted to `0..n` in ascending order of the
/// original id, which keeps the eigenvector/vertex correspondence stable
/// across tools that renumber.
///
/// Duplicate edges are collapsed and counted rather than rejected; self-loops
/// are an error.
pub fn parse_edge_list(text: &str) -> Result<ParsedEdgeList, GraphError> {
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let a = parse_token(tokens.next(), line_no)?;
        let b = parse_token(tokens.next(), line_no)?;
        if let Some(extra) = tokens.next() {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("unexpected trailing token `{extra}`"),
            });
        }
        if a == b {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("self-loop on vertex {a}"),
            });
        }
        raw_edges.push((a.min(b), a.max(b)));
    }
    if raw_edges.is_empty() {
        return Err(GraphError::Empty);
    }

    // Compact ids in ascending order of original id.
    let mut id_map: BTreeMap<u64, u32> = BTreeMap::new();
    for &(a, b) in &raw_edges {
        id_map.entry(a).or_insert(0);
        id_map.entry(b).or_insert(0);
    }
    for (next, v) in id_map.values_mut().enumerate() {
        *v = next as u32;
    }
    let n = id_map.len();

    let mut edges: Vec<(u32, u32)> = raw_edges
        .iter()
        .map(|&(a, b)| (id_map[&a], id_map[&b]))
        .collect();
    edges.sort_unstable();
    let before = edges.len();
    edges.dedup();
    let duplicates_collapsed = before - edges.len();

    let graph = Graph::new(n, edges)?;
    Ok(ParsedEdgeList {
        graph,
        duplicates_collapsed,
    })
}

fn parse_token(token: Option<&str>, line_no: usize) -> Result<u64, GraphError> {
    let token = token.ok_or_else(|| GraphError::Parse {
        line: line_no,
        message: "expected two vertex ids".into(),
    })?;
    token.parse::<u64>().map_err(|_| GraphError::Parse {
        line: line_no,
        message: format!("malformed vertex id `{token}`"),
    })
}
