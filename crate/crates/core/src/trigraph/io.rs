//! Graph cache files and text exports.
//!
//! Cache format, UTF-8 with `\n` line endings:
//!
//! ```text
//! TRIGRAPH 1 n=<n> edges=<m>
//! <i> <j>            one line per edge, i < j, lexicographic order
//! CRC32=<hex>        CRC-32 of every byte before this line, 8 lowercase digits
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::{GraphError, TrinomialGraph};

const MAGIC: &str = "TRIGRAPH";
const VERSION: &str = "1";

/// Serializes a graph into the cache format.
pub fn write_graph(g: &TrinomialGraph) -> String {
    let mut body = format!("{MAGIC} {VERSION} n={} edges={}\n", g.n(), g.edge_count());
    for (i, j) in g.edges() {
        let _ = writeln!(body, "{i} {j}");
    }
    let crc = crc32fast::hash(body.as_bytes());
    let _ = writeln!(body, "CRC32={crc:08x}");
    body
}

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::Malformed(msg.into())
}

fn field<T: FromStr>(token: Option<&str>, key: &str) -> Result<T, GraphError> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| malformed(format!("expected {key}=<value> in header")))
}

/// Parses the cache format, checking version, checksum and edge ordering.
pub fn parse_graph(text: &str) -> Result<TrinomialGraph, GraphError> {
    let trailer_start = text
        .trim_end_matches('\n')
        .rfind('\n')
        .map(|p| p + 1)
        .ok_or_else(|| malformed("missing checksum trailer"))?;
    let (body, trailer) = text.split_at(trailer_start);
    let expected = trailer
        .trim_end_matches('\n')
        .strip_prefix("CRC32=")
        .and_then(|h| u32::from_str_radix(h, 16).ok())
        .ok_or_else(|| malformed("missing checksum trailer"))?;

    let mut lines = body.lines();
    let header = lines.next().ok_or_else(|| malformed("empty file"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some(MAGIC) {
        return Err(malformed("missing TRIGRAPH header"));
    }
    match tokens.next() {
        Some(VERSION) => {}
        Some(other) => return Err(GraphError::Version(other.to_string())),
        None => return Err(malformed("missing version")),
    }
    let actual = crc32fast::hash(body.as_bytes());
    if actual != expected {
        return Err(GraphError::Checksum { expected, actual });
    }
    let n: usize = field(tokens.next(), "n")?;
    let edge_count: usize = field(tokens.next(), "edges")?;
    if n < 2 {
        return Err(GraphError::TooSmall(n));
    }

    let mut edges = Vec::with_capacity(edge_count);
    let mut last = (0, 0);
    for line in lines {
        let mut it = line.split(' ');
        let (Some(i), Some(j), None) = (it.next(), it.next(), it.next()) else {
            return Err(malformed(format!("bad edge line {line:?}")));
        };
        let (i, j): (usize, usize) = match (i.parse(), j.parse()) {
            (Ok(i), Ok(j)) => (i, j),
            _ => return Err(malformed(format!("bad edge line {line:?}"))),
        };
        if !(1 <= i && i < j && j < n) || (i, j) <= last {
            return Err(malformed(format!("edge {i} {j} out of range or out of order")));
        }
        last = (i, j);
        edges.push((i, j));
    }
    if edges.len() != edge_count {
        return Err(malformed(format!(
            "header declares {edge_count} edges, found {}",
            edges.len()
        )));
    }
    Ok(TrinomialGraph::from_edges(n, edges))
}

/// Writes the cache file atomically (temporary file, then rename).
pub fn save_graph(g: &TrinomialGraph, path: &Path) -> Result<(), GraphError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let file_name = path
        .file_name()
        .ok_or_else(|| malformed("graph path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp{}", file_name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(write_graph(g).as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_graph(path: &Path) -> Result<TrinomialGraph, GraphError> {
    parse_graph(&fs::read_to_string(path)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    EdgeList,
    AdjacencyCsv,
}

impl FromStr for ExportFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "edge-list" => Ok(ExportFormat::EdgeList),
            "adjacency-csv" => Ok(ExportFormat::AdjacencyCsv),
            other => Err(GraphError::UnknownFormat(other.to_string())),
        }
    }
}

/// Deterministic text export; vertices in increasing order.
pub fn export_graph(g: &TrinomialGraph, format: ExportFormat) -> String {
    let mut out = String::new();
    match format {
        ExportFormat::EdgeList => {
            for (i, j) in g.edges() {
                let _ = writeln!(out, "{i} {j}");
            }
        }
        ExportFormat::Dot => {
            let _ = writeln!(out, "graph T{} {{", g.n());
            for v in g.vertices() {
                let _ = writeln!(out, "  {v};");
            }
            for (i, j) in g.edges() {
                let _ = writeln!(out, "  {i} -- {j};");
            }
            out.push_str("}\n");
        }
        ExportFormat::AdjacencyCsv => {
            for i in g.vertices() {
                let row: Vec<&str> = g
                    .vertices()
                    .map(|j| if g.has_edge(i, j) { "1" } else { "0" })
                    .collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
    }
    out
}
