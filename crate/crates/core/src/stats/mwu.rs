//! Mann-Whitney U test with midrank ties.
//!
//! `U_x` counts pairs with `x_i > y_j` (ties count one half). Small samples
//! use the exact permutation distribution of the pooled midranks; larger ones
//! use the normal approximation with tie-corrected variance and a continuity
//! correction.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Combined sample size up to which `Method::Auto` enumerates exactly.
pub const EXACT_MAX_COMBINED: usize = 16;

pub const MIN_GROUP: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alternative {
    /// H1: `y` is stochastically greater than `x` (small `U_x`).
    Greater,
    TwoSided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Exact,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MannWhitney {
    pub u_x: f64,
    pub u_y: f64,
    pub p_value: f64,
    pub exact: bool,
    /// Every pooled value is equal; `p_value` is reported as 1.
    pub degenerate: bool,
}

pub fn mann_whitney(x: &[f64], y: &[f64], alternative: Alternative) -> Result<MannWhitney> {
    mann_whitney_with(x, y, alternative, Method::Auto)
}

pub fn mann_whitney_with(
    x: &[f64],
    y: &[f64],
    alternative: Alternative,
    method: Method,
) -> Result<MannWhitney> {
    if x.len() < MIN_GROUP || y.len() < MIN_GROUP {
        return Err(Error::InvalidSample(format!(
            "Mann-Whitney needs at least {MIN_GROUP} values per group (got {} and {})",
            x.len(),
            y.len()
        )));
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(Error::InvalidSample("NaN in sample".into()));
    }
    let n = x.len();
    let m = y.len();
    let ranks = PooledRanks::new(x, y);
    // 2 * U_x = 2 * R_x - n(n + 1)
    let u2_x = ranks.doubled_rank_sum_x as i64 - (n * (n + 1)) as i64;
    let u_x = u2_x as f64 / 2.0;
    let u_y = (n * m) as f64 - u_x;

    let degenerate = ranks.tie_groups.len() == 1;
    if degenerate {
        return Ok(MannWhitney {
            u_x,
            u_y,
            p_value: 1.0,
            exact: method != Method::Normal,
            degenerate,
        });
    }

    let exact = match method {
        Method::Exact => true,
        Method::Normal => false,
        Method::Auto => n + m <= EXACT_MAX_COMBINED,
    };
    let p_value = if exact {
        exact_p(&ranks, n, alternative)
    } else {
        normal_p(&ranks, n, m, u_x, alternative)
    };
    Ok(MannWhitney {
        u_x,
        u_y,
        p_value,
        exact,
        degenerate,
    })
}

struct PooledRanks {
    /// Doubled midrank of every pooled value (integers even with ties).
    doubled: Vec<usize>,
    doubled_rank_sum_x: usize,
    tie_groups: Vec<usize>,
}

impl PooledRanks {
    fn new(x: &[f64], y: &[f64]) -> Self {
        let mut pooled: Vec<(f64, bool)> = x
            .iter()
            .map(|&v| (v, true))
            .chain(y.iter().map(|&v| (v, false)))
            .collect();
        pooled.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut doubled = Vec::with_capacity(pooled.len());
        let mut tie_groups = Vec::new();
        let mut sum_x = 0;
        let mut i = 0;
        while i < pooled.len() {
            let mut j = i + 1;
            while j < pooled.len() && pooled[j].0 == pooled[i].0 {
                j += 1;
            }
            // Positions i..j (0-based) share midrank (i + 1 + j) / 2.
            let d = i + 1 + j;
            for item in &pooled[i..j] {
                doubled.push(d);
                if item.1 {
                    sum_x += d;
                }
            }
            tie_groups.push(j - i);
            i = j;
        }
        PooledRanks {
            doubled,
            doubled_rank_sum_x: sum_x,
            tie_groups,
        }
    }
}

/// Permutation distribution of the doubled rank sum of `n` items drawn from
/// the pooled ranks, by subset-sum counting.
fn exact_p(ranks: &PooledRanks, n: usize, alternative: Alternative) -> f64 {
    let max_sum: usize = ranks.doubled.iter().sum();
    // counts[k][s] = number of k-subsets with doubled rank sum s
    let mut counts = vec![vec![0f64; max_sum + 1]; n + 1];
    counts[0][0] = 1.0;
    for (seen, &d) in ranks.doubled.iter().enumerate() {
        for k in (1..=n.min(seen + 1)).rev() {
            let (lower, upper) = counts.split_at_mut(k);
            let prev = &lower[k - 1];
            let cur = &mut upper[0];
            for s in (d..=max_sum).rev() {
                cur[s] += prev[s - d];
            }
        }
    }
    let dist = &counts[n];
    let total: f64 = dist.iter().sum();
    let obs = ranks.doubled_rank_sum_x;
    let lower = dist[..=obs].iter().sum::<f64>() / total;
    match alternative {
        Alternative::Greater => lower,
        Alternative::TwoSided => {
            let upper = dist[obs..].iter().sum::<f64>() / total;
            (2.0 * lower.min(upper)).min(1.0)
        }
    }
}

fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

fn normal_p(ranks: &PooledRanks, n: usize, m: usize, u_x: f64, alternative: Alternative) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let total = nf + mf;
    let tie_term: f64 = ranks
        .tie_groups
        .iter()
        .map(|&t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum();
    let var = nf * mf / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    let sd = var.sqrt();
    let mean = nf * mf / 2.0;
    match alternative {
        Alternative::Greater => std_normal_cdf((u_x - mean + 0.5) / sd),
        Alternative::TwoSided => {
            let z = ((u_x - mean).abs() - 0.5) / sd;
            (2.0 * (1.0 - std_normal_cdf(z))).min(1.0)
        }
    }
}
