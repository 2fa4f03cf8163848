//! Null-mask versus confusion-mask error differences per configuration cell.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffCell<K> {
    pub key: K,
    pub null_error: f64,
    pub confusion_error: f64,
    /// `null_error - confusion_error`; positive means the confusion mask did better.
    pub diff: f64,
}

impl<K> DiffCell<K> {
    pub fn confusion_better(&self) -> bool {
        self.diff > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffTable<K> {
    pub cells: Vec<DiffCell<K>>,
    pub positive_count: usize,
    pub negative_count: usize,
    pub positive_sum: f64,
    pub negative_sum: f64,
}

/// Cells must cover the same keys on both sides. Zero differences count as
/// neither positive nor negative.
pub fn diff_table<K: Ord + Clone + Debug>(
    null_errors: &BTreeMap<K, f64>,
    confusion_errors: &BTreeMap<K, f64>,
) -> Result<DiffTable<K>> {
    if let Some(k) = null_errors
        .keys()
        .find(|k| !confusion_errors.contains_key(*k))
    {
        return Err(Error::KeyMismatch(format!(
            "{k:?} has no confusion-mask entry"
        )));
    }
    if let Some(k) = confusion_errors
        .keys()
        .find(|k| !null_errors.contains_key(*k))
    {
        return Err(Error::KeyMismatch(format!("{k:?} has no null-mask entry")));
    }
    let mut table = DiffTable {
        cells: Vec::with_capacity(null_errors.len()),
        positive_count: 0,
        negative_count: 0,
        positive_sum: 0.0,
        negative_sum: 0.0,
    };
    for (key, &null_error) in null_errors {
        let confusion_error = confusion_errors[key];
        let diff = null_error - confusion_error;
        if diff > 0.0 {
            table.positive_count += 1;
            table.positive_sum += diff;
        } else if diff < 0.0 {
            table.negative_count += 1;
            table.negative_sum += diff;
        }
        table.cells.push(DiffCell {
            key: key.clone(),
            null_error,
            confusion_error,
            diff,
        });
    }
    Ok(table)
}
