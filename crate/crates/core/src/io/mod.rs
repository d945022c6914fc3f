//! Graph ingestion: whitespace edge lists and a GML subset.

mod edgelist;
mod gml;

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

pub use edgelist::{load_edge_list, write_edge_list, EdgeListOptions};
pub use gml::load_gml;

use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Gml,
}

impl Format {
    /// Guesses the format from a file extension; anything but `.gml` is an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("gml") => Format::Gml,
            _ => Format::EdgeList,
        }
    }
}

pub fn load_path(path: &Path, format: Format) -> Result<Graph> {
    let reader = BufReader::new(File::open(path)?);
    match format {
        Format::EdgeList => load_edge_list(reader, &EdgeListOptions::default()),
        Format::Gml => load_gml(reader),
    }
}
