//! Per-instance error reports and the groupings the sweep and difference
//! table consume.
//!
//! Error report CSV columns:
//!
//! ```text
//! entry,topology,k_avg,instance,attack,mode,curve_kind,mask_kind,mask_size,mae
//! ```
//!
//! `mask_kind` is `none` (with `mask_size` 0) for unmasked inputs.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::difftable::DiffTable;
use super::sweep::ThresholdReport;
use crate::attack::{AttackMode, CurveKind, Strategy};
use crate::error::{Error, Result};
use crate::fmtnum::format_g17;
use crate::mask::MaskKind;
use crate::netgen::Topology;

pub const ERROR_CSV_HEADER: &str =
    "entry,topology,k_avg,instance,attack,mode,curve_kind,mask_kind,mask_size,mae";

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRecord {
    pub entry: String,
    pub topology: Topology,
    pub k_avg: f64,
    pub instance: usize,
    pub attack: Strategy,
    pub mode: AttackMode,
    pub curve_kind: CurveKind,
    pub mask_kind: Option<MaskKind>,
    pub mask_size: usize,
    pub mae: f64,
}

pub fn write_error_csv<W: Write>(records: &[ErrorRecord], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{ERROR_CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.entry,
            r.topology,
            format_g17(r.k_avg),
            r.instance,
            r.attack,
            r.mode,
            r.curve_kind,
            r.mask_kind.map_or("none".to_string(), |k| k.to_string()),
            r.mask_size,
            format_g17(r.mae)
        )?;
    }
    w.flush()
}

pub fn read_error_csv<R: BufRead>(r: R) -> Result<Vec<ErrorRecord>> {
    const CTX: &str = "error csv";
    let mut lines = r.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim_end() == ERROR_CSV_HEADER => {}
        Some(Ok(h)) => return Err(Error::parse(CTX, format!("bad header {h:?}"))),
        Some(Err(e)) => return Err(Error::parse(CTX, e.to_string())),
        None => return Err(Error::parse(CTX, "empty input")),
    }
    let mut out = Vec::new();
    for (row, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::parse(CTX, e.to_string()))?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 10 {
            return Err(Error::parse(CTX, format!("row {row}: expected 10 columns")));
        }
        let bad = |what: &str| Error::parse(CTX, format!("row {row}: bad {what}"));
        let mask_kind = match cols[7] {
            "none" => None,
            k => Some(k.parse::<MaskKind>().map_err(|_| bad("mask_kind"))?),
        };
        out.push(ErrorRecord {
            entry: cols[0].to_string(),
            topology: cols[1].parse().map_err(|_| bad("topology"))?,
            k_avg: cols[2].parse().map_err(|_| bad("k_avg"))?,
            instance: cols[3].parse().map_err(|_| bad("instance"))?,
            attack: cols[4].parse().map_err(|_| bad("attack"))?,
            mode: cols[5].parse().map_err(|_| bad("mode"))?,
            curve_kind: cols[6].parse().map_err(|_| bad("curve_kind"))?,
            mask_kind,
            mask_size: cols[8].parse().map_err(|_| bad("mask_size"))?,
            mae: cols[9].parse().map_err(|_| bad("mae"))?,
        });
    }
    Ok(out)
}

/// Network/attack configuration shared by the rows of one sweep.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConfigKey {
    pub topology: Topology,
    /// `k_avg` in its shortest round-tripping text form.
    pub k_avg: String,
    pub attack: Strategy,
    pub mode: AttackMode,
    pub curve_kind: CurveKind,
}

/// One cell of a difference table: a configuration at one mask size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellKey {
    pub config: ConfigKey,
    pub mask_size: usize,
}

impl ErrorRecord {
    pub fn config_key(&self) -> ConfigKey {
        ConfigKey {
            topology: self.topology,
            k_avg: format_g17(self.k_avg),
            attack: self.attack,
            mode: self.mode,
            curve_kind: self.curve_kind,
        }
    }
}

/// Baseline (unmasked) errors and null-mask errors by size, for one config.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepInput {
    pub baseline: Vec<f64>,
    pub by_size: BTreeMap<usize, Vec<f64>>,
}

/// Groups unmasked and null-masked rows by configuration. Rows are ordered
/// by instance so paired statistics line up.
pub fn sweep_inputs(records: &[ErrorRecord]) -> BTreeMap<ConfigKey, SweepInput> {
    let mut sorted: Vec<&ErrorRecord> = records.iter().collect();
    sorted.sort_by(|a, b| (a.instance, &a.entry).cmp(&(b.instance, &b.entry)));
    let mut out: BTreeMap<ConfigKey, SweepInput> = BTreeMap::new();
    for r in sorted {
        let slot = out.entry(r.config_key()).or_default();
        match r.mask_kind {
            None => slot.baseline.push(r.mae),
            Some(MaskKind::Null) => slot.by_size.entry(r.mask_size).or_default().push(r.mae),
            Some(MaskKind::Confusion) => {}
        }
    }
    out
}

/// Mean error per (config, mask size) over rows with the given mask kind.
pub fn cell_means(records: &[ErrorRecord], kind: MaskKind) -> BTreeMap<CellKey, f64> {
    let mut acc: BTreeMap<CellKey, (f64, usize)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.mask_kind == Some(kind)) {
        let key = CellKey {
            config: r.config_key(),
            mask_size: r.mask_size,
        };
        let slot = acc.entry(key).or_insert((0.0, 0));
        slot.0 += r.mae;
        slot.1 += 1;
    }
    acc.into_iter()
        .map(|(k, (sum, count))| (k, sum / count as f64))
        .collect()
}

/// Sweep results as CSV: one row per (config, size).
pub fn write_sweep_csv<W: Write>(
    reports: &BTreeMap<ConfigKey, ThresholdReport>,
    mut w: W,
) -> std::io::Result<()> {
    writeln!(
        w,
        "topology,k_avg,attack,mode,curve_kind,size,samples,u_statistic,p_value,significant,sigma,threshold"
    )?;
    for (key, report) in reports {
        let threshold = report
            .threshold
            .map_or("none".to_string(), |t| t.to_string());
        for s in &report.sizes {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                key.topology,
                key.k_avg,
                key.attack,
                key.mode,
                key.curve_kind,
                s.size,
                s.samples,
                format_g17(s.u_statistic),
                format_g17(s.p_value),
                s.significant,
                format_g17(s.sigma),
                threshold
            )?;
        }
    }
    w.flush()
}

pub fn write_diff_csv<W: Write>(table: &DiffTable<CellKey>, mut w: W) -> std::io::Result<()> {
    writeln!(
        w,
        "topology,k_avg,attack,mode,curve_kind,mask_size,null_mae,confusion_mae,diff"
    )?;
    for c in &table.cells {
        let k = &c.key.config;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            k.topology,
            k.k_avg,
            k.attack,
            k.mode,
            k.curve_kind,
            c.key.mask_size,
            format_g17(c.null_error),
            format_g17(c.confusion_error),
            format_g17(c.diff)
        )?;
    }
    w.flush()
}
