//! Curve error metrics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the training loss aggregates per-index errors.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LossMode {
    /// Mean of Euclidean norms of the scalar residuals, i.e. mean `|v̂ - v|`.
    #[default]
    Verbatim,
    /// Mean of squared residuals.
    Squared,
}

fn check_lengths(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::InvalidSample("curves are empty".into()));
    }
    Ok(())
}

/// Mean absolute error `(1/N) * sum |a_i - b_i|`.
pub fn mae(a: &[f64], b: &[f64]) -> Result<f64> {
    check_lengths(a, b)?;
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum();
    Ok(sum / a.len() as f64)
}

pub fn curve_loss(pred: &[f64], truth: &[f64], mode: LossMode) -> Result<f64> {
    match mode {
        LossMode::Verbatim => mae(pred, truth),
        LossMode::Squared => {
            check_lengths(pred, truth)?;
            let sum: f64 = pred.iter().zip(truth).map(|(x, y)| (x - y) * (x - y)).sum();
            Ok(sum / pred.len() as f64)
        }
    }
}

/// Mean over instances of `masked_i - unmasked_i`: the average error added
/// by information loss on the same test instances.
pub fn paired_mean_difference(masked: &[f64], unmasked: &[f64]) -> Result<f64> {
    check_lengths(masked, unmasked)?;
    let sum: f64 = masked.iter().zip(unmasked).map(|(m, u)| m - u).sum();
    Ok(sum / masked.len() as f64)
}
