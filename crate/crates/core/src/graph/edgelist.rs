//! `RNET-EDGES v1` text format.
//!
//! ```text
//! # RNET-EDGES v1 N=3 M=2
//! 0 1
//! 1 2
//! ```

use std::io::{BufRead, Write};

use super::DiGraph;
use crate::error::{Error, Result};

pub const EDGE_LIST_MAGIC: &str = "# RNET-EDGES v1";

/// Writes edges in `(src, dst)` order with LF line endings.
pub fn write_edge_list<W: Write>(g: &DiGraph, mut w: W) -> std::io::Result<()> {
    let edges = g.edges();
    writeln!(
        w,
        "{EDGE_LIST_MAGIC} N={} M={}",
        g.node_count(),
        edges.len()
    )?;
    for (u, v) in edges {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<DiGraph> {
    const CTX: &str = "RNET-EDGES";
    let mut lines = r.lines();
    let header = match lines.next() {
        Some(line) => line.map_err(|e| Error::parse(CTX, e.to_string()))?,
        None => return Err(Error::parse(CTX, "empty input")),
    };
    let rest = header
        .strip_prefix(EDGE_LIST_MAGIC)
        .ok_or_else(|| Error::parse(CTX, format!("bad header line {header:?}")))?;
    let mut n = None;
    let mut m = None;
    for field in rest.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::parse(CTX, format!("bad header field {field:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Error::parse(CTX, format!("bad header value {field:?}")))?;
        match key {
            "N" => n = Some(value),
            "M" => m = Some(value),
            _ => return Err(Error::parse(CTX, format!("unknown header field {key:?}"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse(CTX, "header missing N"))?;
    let m = m.ok_or_else(|| Error::parse(CTX, "header missing M"))?;

    let mut g = DiGraph::empty(n);
    let mut seen = 0usize;
    for (lineno, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::parse(CTX, e.to_string()))?;
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse_id = |s: Option<&str>| -> Result<usize> {
            s.and_then(|s| s.parse().ok()).ok_or_else(|| {
                Error::parse(CTX, format!("line {}: expected `<src> <dst>`", lineno + 2))
            })
        };
        let u = parse_id(parts.next())?;
        let v = parse_id(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::parse(
                CTX,
                format!("line {}: trailing data", lineno + 2),
            ));
        }
        if !g.add_edge(u, v)? {
            return Err(Error::parse(
                CTX,
                format!("line {}: duplicate edge", lineno + 2),
            ));
        }
        seen += 1;
    }
    if seen != m {
        return Err(Error::parse(
            CTX,
            format!("header says M={m}, found {seen} edges"),
        ));
    }
    Ok(g)
}
