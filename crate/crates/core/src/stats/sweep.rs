//! Mask-size threshold sweep: the first size whose errors are significantly
//! greater than the unmasked baseline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::mwu::{mann_whitney, Alternative};
use crate::error::{Error, Result};

/// Significance level used by default.
pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeResult {
    pub size: usize,
    pub samples: usize,
    pub u_statistic: f64,
    pub p_value: f64,
    pub significant: bool,
    /// Mean masked error minus mean baseline error.
    pub sigma: f64,
    pub exact: bool,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub alpha: f64,
    /// Smallest tested size.
    pub start: usize,
    /// Common spacing of the tested sizes, when they are evenly spaced.
    pub step: Option<usize>,
    pub baseline_samples: usize,
    /// Smallest size with `p < alpha`, or `None`.
    pub threshold: Option<usize>,
    pub sizes: Vec<SizeResult>,
}

fn check_sample(label: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidSample(format!("{label} group is empty")));
    }
    if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::InvalidSample(format!(
            "{label} group holds a negative or non-finite error"
        )));
    }
    Ok(())
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// One-sided test per mask size (masked errors greater than baseline).
pub fn threshold_sweep(
    errors_by_size: &BTreeMap<usize, Vec<f64>>,
    baseline: &[f64],
    alpha: f64,
) -> Result<ThresholdReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidSample(format!(
            "alpha={alpha} outside (0, 1)"
        )));
    }
    if errors_by_size.is_empty() {
        return Err(Error::InvalidSample("no mask sizes to sweep".into()));
    }
    check_sample("baseline", baseline)?;
    let base_mean = mean(baseline);

    let mut sizes = Vec::with_capacity(errors_by_size.len());
    for (&size, errors) in errors_by_size {
        check_sample(&format!("size {size}"), errors)?;
        let test = mann_whitney(baseline, errors, Alternative::Greater)?;
        sizes.push(SizeResult {
            size,
            samples: errors.len(),
            u_statistic: test.u_x,
            p_value: test.p_value,
            significant: test.p_value < alpha,
            sigma: mean(errors) - base_mean,
            exact: test.exact,
            degenerate: test.degenerate,
        });
    }
    let keys: Vec<usize> = errors_by_size.keys().copied().collect();
    let step = match keys.as_slice() {
        [_] => None,
        [a, b, ..] if keys.windows(2).all(|w| w[1] - w[0] == b - a) => Some(b - a),
        _ => None,
    };
    Ok(ThresholdReport {
        alpha,
        start: keys[0],
        step,
        baseline_samples: baseline.len(),
        threshold: sizes.iter().find(|s| s.significant).map(|s| s.size),
        sizes,
    })
}
