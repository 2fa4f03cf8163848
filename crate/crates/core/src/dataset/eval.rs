//! Scores externally produced predictions against a dataset's ground truth.
//!
//! Predictions live in one directory, one curve CSV per test entry, named
//! `<entry id>.csv`.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use super::manifest::{DatasetManifest, Role};
use crate::attack::read_curve_csv;
use crate::error::{Error, Result};
use crate::stats::{mae, ErrorRecord};

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

/// Per-entry MAE between each test prediction and the intact-network curve.
pub fn evaluate_predictions(
    manifest: &DatasetManifest,
    dataset_dir: &Path,
    predictions_dir: &Path,
) -> Result<Vec<ErrorRecord>> {
    let mut out = Vec::new();
    for e in manifest.entries.iter().filter(|e| e.role == Role::Test) {
        let truth = read_curve_csv(open(&dataset_dir.join(&e.curve_path))?, e.curve_kind)?;
        let pred_path = predictions_dir.join(format!("{}.csv", e.id));
        let pred = read_curve_csv(open(&pred_path)?, e.curve_kind)?;
        if pred.len() != manifest.n {
            return Err(Error::LengthMismatch {
                left: pred.len(),
                right: manifest.n,
            });
        }
        out.push(ErrorRecord {
            entry: e.id.clone(),
            topology: e.topology,
            k_avg: e.k_avg,
            instance: e.instance_index,
            attack: e.attack.strategy,
            mode: e.attack.mode,
            curve_kind: e.curve_kind,
            mask_kind: e.mask.map(|m| m.kind),
            mask_size: e.mask.map_or(0, |m| m.size),
            mae: mae(&pred.values, &truth.values)?,
        });
    }
    if out.is_empty() {
        return Err(Error::InvalidConfig("manifest has no test entries".into()));
    }
    Ok(out)
}
