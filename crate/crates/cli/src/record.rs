use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use serde::Serialize;

/// One run's output. Keys are part of the file format.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub network_name: String,
    #[serde(rename = "N")]
    pub nodes: usize,
    #[serde(rename = "M")]
    pub edges: usize,
    pub strategy: String,
    pub params: Params,
    #[serde(rename = "R")]
    pub r: f64,
    pub samples: Vec<(usize, f64)>,
    pub runtime_ms: u64,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub history: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Params {
    #[serde(rename = "X", skip_serializing_if = "Option::is_none")]
    pub intervals: Option<usize>,
    #[serde(rename = "Y", skip_serializing_if = "Option::is_none")]
    pub pivots: Option<usize>,
    #[serde(rename = "Z", skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub damping: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub batch: Option<usize>,
    pub seed: u64,
}

pub fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

/// `(Q, s(Q))` at `Q = 0`, at every `Q` where the curve drops, and at `Q = N`.
pub fn breakpoints(curve: &[f64]) -> Vec<(usize, f64)> {
    let n = curve.len() - 1;
    let mut out = vec![(0, curve[0])];
    for q in 1..=n {
        if curve[q] != curve[q - 1] || q == n {
            out.push((q, curve[q]));
        }
    }
    out
}

pub fn network_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

/// Opens `path`, or stdout when `None`, for buffered writing.
pub fn sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn write_record<T: Serialize + ?Sized>(value: &T, path: Option<&Path>) -> anyhow::Result<()> {
    let mut out = sink(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn write_curve_csv(curve: &[f64], path: &Path) -> anyhow::Result<()> {
    let mut out = sink(Some(path))?;
    writeln!(out, "Q,gcs")?;
    for (q, s) in curve.iter().enumerate() {
        writeln!(out, "{q},{s}")?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn breakpoints_keep_drops_and_ends() {
        let curve = [1.0, 0.5, 0.5, 0.25, 0.25];
        assert_eq!(
            breakpoints(&curve),
            vec![(0, 1.0), (1, 0.5), (3, 0.25), (4, 0.25)]
        );
        assert_eq!(breakpoints(&[0.0]), vec![(0, 0.0)]);
    }

    #[test]
    fn rounding() {
        assert_eq!(round4(0.123_449), 0.1234);
        assert_eq!(round4(0.16), 0.16);
    }
}
