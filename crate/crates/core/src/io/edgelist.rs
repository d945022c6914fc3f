use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

#[derive(Debug, Clone)]
pub struct EdgeListOptions {
    /// Honor a leading `# nodes <N>` comment by pre-registering nodes `"0".."N-1"`.
    pub node_header: bool,
}

impl Default for EdgeListOptions {
    fn default() -> Self {
        Self { node_header: true }
    }
}

fn is_comment(line: &str) -> bool {
    line.starts_with('#') || line.starts_with('%')
}

fn parse_node_header(line: &str) -> Option<usize> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next(), parts.next()) {
        (Some("#"), Some("nodes"), Some(n), None) => n.parse().ok(),
        _ => None,
    }
}

/// Reads a whitespace-separated edge list.
///
/// Lines starting with `#` or `%` are comments and blank lines are skipped. Every
/// other line must hold exactly two node tokens. Tokens get dense ids in order of
/// first appearance; direction, self-loops and repeated edges are discarded.
pub fn load_edge_list<R: BufRead>(reader: R, options: &EdgeListOptions) -> Result<Graph> {
    let mut builder = GraphBuilder::new();
    let mut seen_data = false;
    let mut declared_nodes = false;
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if is_comment(line) {
            if options.node_header && !seen_data && !declared_nodes {
                if let Some(n) = parse_node_header(line) {
                    for i in 0..n {
                        builder.intern(&i.to_string());
                    }
                    declared_nodes = true;
                }
            }
            continue;
        }
        let mut tokens = line.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => builder.add_labelled_edge(a, b),
            _ => {
                return Err(Error::parse(
                    index + 1,
                    format!("expected two node tokens, found `{line}`"),
                ))
            }
        }
        seen_data = true;
    }
    if !seen_data && !(declared_nodes && builder.node_count() > 0) {
        return Err(Error::NoEdges);
    }
    Ok(builder.build())
}

/// Writes `graph` as an edge list of dense ids, preceded by a `# nodes <N>` header
/// so isolated nodes survive a reload.
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# nodes {}", graph.node_count())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}
