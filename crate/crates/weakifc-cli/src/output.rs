//! Numeric formatting and file emission helpers.
//!
//! All CSV output uses 9 significant digits, a locale-independent decimal
//! point and `\n` line endings.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use weakifc::geometry::ConvexRegion;
use weakifc::model::ChannelParams;

/// Formats with 9 significant digits, like printf's `%.9g`.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.8e}", x);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let mut s = format!("{x:.decimals$}");
        if s.contains('.') {
            s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        }
        s
    } else {
        let m = mant.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{exp}")
    }
}

/// Metadata block carried by every JSON output so any figure can be
/// regenerated from its own file.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub log_base: u32,
    pub channel: ChannelParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Metadata {
    pub fn new(channel: ChannelParams) -> Self {
        Self {
            tool: "ifc",
            version: env!("CARGO_PKG_VERSION"),
            log_base: 2,
            channel,
            n_alpha: None,
            seed: None,
        }
    }

    pub fn with_n_alpha(mut self, n_alpha: usize) -> Self {
        self.n_alpha = Some(n_alpha);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// A region file: canonical hull vertices plus metadata.
#[derive(Debug, Clone, Serialize)]
pub struct RegionFile {
    pub metadata: Metadata,
    pub vertices: Vec<(f64, f64)>,
}

impl RegionFile {
    pub fn new(metadata: Metadata, region: &ConvexRegion) -> Self {
        Self {
            metadata,
            vertices: region.vertices.iter().map(|p| (p.x, p.y)).collect(),
        }
    }
}

pub fn write_csv(path: &Path, header: &str, rows: &[Vec<f64>]) -> std::io::Result<()> {
    let mut out = String::with_capacity(rows.len() * 32);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| fmt_g(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    fs::write(path, out)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let mut file = fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut file, value)?;
    file.write_all(b"\n")
}
