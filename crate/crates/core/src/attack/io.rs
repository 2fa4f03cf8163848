//! CSV encodings for curves (`index,value`) and removal orders (`step,node`).

use std::io::{BufRead, Write};

use super::{CurveKind, RemovalSequence, RobustnessCurve};
use crate::error::{Error, Result};
use crate::fmtnum::format_g17;

pub const CURVE_CSV_HEADER: &str = "index,value";
pub const SEQUENCE_CSV_HEADER: &str = "step,node";

pub fn write_curve_csv<W: Write>(curve: &RobustnessCurve, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CURVE_CSV_HEADER}")?;
    for (i, v) in curve.values.iter().enumerate() {
        writeln!(w, "{i},{}", format_g17(*v))?;
    }
    w.flush()
}

fn read_pairs<R: BufRead, T: std::str::FromStr>(r: R, header: &str, ctx: &str) -> Result<Vec<T>> {
    let mut lines = r.lines();
    match lines.next() {
        Some(Ok(line)) if line.trim_end() == header => {}
        Some(Ok(line)) => return Err(Error::parse(ctx, format!("bad header {line:?}"))),
        Some(Err(e)) => return Err(Error::parse(ctx, e.to_string())),
        None => return Err(Error::parse(ctx, "empty input")),
    }
    let mut out = Vec::new();
    for (row, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::parse(ctx, e.to_string()))?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let (idx, value) = line
            .split_once(',')
            .ok_or_else(|| Error::parse(ctx, format!("row {row}: expected two columns")))?;
        if idx.parse::<usize>().ok() != Some(row) {
            return Err(Error::parse(
                ctx,
                format!("row {row}: index {idx:?} out of order"),
            ));
        }
        let value = value
            .parse()
            .map_err(|_| Error::parse(ctx, format!("row {row}: bad value {value:?}")))?;
        out.push(value);
    }
    Ok(out)
}

pub fn read_curve_csv<R: BufRead>(r: R, kind: CurveKind) -> Result<RobustnessCurve> {
    let values: Vec<f64> = read_pairs(r, CURVE_CSV_HEADER, "curve csv")?;
    Ok(RobustnessCurve { kind, values })
}

pub fn write_sequence_csv<W: Write>(seq: &RemovalSequence, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{SEQUENCE_CSV_HEADER}")?;
    for (i, v) in seq.as_slice().iter().enumerate() {
        writeln!(w, "{i},{v}")?;
    }
    w.flush()
}

pub fn read_sequence_csv<R: BufRead>(r: R) -> Result<RemovalSequence> {
    let order: Vec<usize> = read_pairs(r, SEQUENCE_CSV_HEADER, "sequence csv")?;
    let n = order.len();
    RemovalSequence::new(order, n)
}
