//! Seeded generators for directed ER, q-snapback, Newman-Watts small-world
//! and static-model scale-free networks.
//!
//! Every generator produces exactly `M = round(k_avg * n)` edges, where the
//! average degree is taken as edges per node (mean in-degree = mean
//! out-degree = `k_avg`).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::kv::parse_kv;
use crate::rng::{seeded, Rng};

/// Exponent of the static-model weights `w_i = (i + 1)^-alpha`.
pub const SF_ALPHA: f64 = 0.5;

/// Consecutive rejected draws the scale-free sampler tolerates, per target edge.
pub const SF_REJECTION_FACTOR: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Topology {
    #[serde(rename = "ER")]
    ErdosRenyi,
    #[serde(rename = "QS")]
    QSnapback,
    #[serde(rename = "SW")]
    SmallWorld,
    #[serde(rename = "SF")]
    ScaleFree,
}

impl Topology {
    pub const ALL: [Topology; 4] = [
        Topology::ErdosRenyi,
        Topology::QSnapback,
        Topology::SmallWorld,
        Topology::ScaleFree,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Topology::ErdosRenyi => "ER",
            Topology::QSnapback => "QS",
            Topology::SmallWorld => "SW",
            Topology::ScaleFree => "SF",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(Topology::ErdosRenyi),
            "qs" => Ok(Topology::QSnapback),
            "sw" => Ok(Topology::SmallWorld),
            "sf" => Ok(Topology::ScaleFree),
            _ => Err(Error::InvalidConfig(format!(
                "unknown topology {s:?} (expected er, qs, sw or sf)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetConfig {
    pub topology: Topology,
    pub n: usize,
    pub k_avg: f64,
    pub seed: u64,
}

/// Target edge count for `n` nodes at average degree `k_avg`.
pub fn edge_target(n: usize, k_avg: f64) -> usize {
    (k_avg * n as f64).round() as usize
}

impl NetConfig {
    pub fn new(topology: Topology, n: usize, k_avg: f64, seed: u64) -> Self {
        NetConfig {
            topology,
            n,
            k_avg,
            seed,
        }
    }

    pub fn edge_target(&self) -> usize {
        edge_target(self.n, self.k_avg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::InvalidConfig(format!("n={} (need n >= 4)", self.n)));
        }
        if !(self.k_avg.is_finite() && self.k_avg > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "k_avg={} must be positive",
                self.k_avg
            )));
        }
        let m = self.edge_target();
        let max = self.n * (self.n - 1);
        if m < self.n - 1 || m > max {
            return Err(Error::InvalidConfig(format!(
                "M={m} outside [{}, {max}] for n={}",
                self.n - 1,
                self.n
            )));
        }
        Ok(())
    }

    /// Parses a `topology`, `n`, `k_avg`, `seed` key-value block.
    pub fn from_kv_text(text: &str) -> Result<Self> {
        let kv = parse_kv(text)?;
        let get = |key: &str| {
            kv.get(key)
                .ok_or_else(|| Error::InvalidConfig(format!("missing key {key:?}")))
        };
        let bad = |key: &str| Error::InvalidConfig(format!("bad value for {key:?}"));
        for key in kv.keys() {
            if !matches!(key.as_str(), "topology" | "n" | "k_avg" | "seed") {
                return Err(Error::InvalidConfig(format!("unknown key {key:?}")));
            }
        }
        Ok(NetConfig {
            topology: get("topology")?.parse()?,
            n: get("n")?.parse().map_err(|_| bad("n"))?,
            k_avg: get("k_avg")?.parse().map_err(|_| bad("k_avg"))?,
            seed: get("seed")?.parse().map_err(|_| bad("seed"))?,
        })
    }
}

/// Generates the configured network from a stream seeded with `cfg.seed`.
pub fn generate(cfg: &NetConfig) -> Result<DiGraph> {
    let mut rng = seeded(cfg.seed);
    generate_with(cfg, &mut rng)
}

pub fn generate_with(cfg: &NetConfig, rng: &mut Rng) -> Result<DiGraph> {
    match cfg.topology {
        Topology::ErdosRenyi => gen_er(cfg, rng),
        Topology::QSnapback => gen_qsnapback(cfg, rng),
        Topology::SmallWorld => gen_smallworld(cfg, rng),
        Topology::ScaleFree => gen_scalefree(cfg, rng),
    }
}

fn expect_topology(cfg: &NetConfig, want: Topology) -> Result<()> {
    if cfg.topology != want {
        return Err(Error::InvalidConfig(format!(
            "config topology {} passed to the {} generator",
            cfg.topology, want
        )));
    }
    cfg.validate()
}

/// Exactly `M` distinct ordered pairs drawn uniformly without replacement.
pub fn gen_er(cfg: &NetConfig, rng: &mut Rng) -> Result<DiGraph> {
    expect_topology(cfg, Topology::ErdosRenyi)?;
    let n = cfg.n;
    let m = cfg.edge_target();
    let mut chosen = index::sample(rng, n * (n - 1), m).into_vec();
    chosen.sort_unstable();
    // Pair index k enumerates (u, v) row by row, skipping the diagonal.
    let pairs = chosen.into_iter().map(|k| {
        let u = k / (n - 1);
        let r = k % (n - 1);
        (u, if r >= u { r + 1 } else { r })
    });
    DiGraph::from_edge_list(n, pairs)
}

/// Forward chain `i -> i+1` plus `M - (n-1)` backward links `j -> i`, `i < j`.
pub fn gen_qsnapback(cfg: &NetConfig, rng: &mut Rng) -> Result<DiGraph> {
    expect_topology(cfg, Topology::QSnapback)?;
    let n = cfg.n;
    let m = cfg.edge_target();
    let backbone = n - 1;
    let eligible = n * (n - 1) / 2;
    if m > backbone + eligible {
        return Err(Error::InvalidConfig(format!(
            "M={m} exceeds the {} edges a q-snapback network on {n} nodes can hold",
            backbone + eligible
        )));
    }
    let mut g = DiGraph::from_edge_list(n, (0..n - 1).map(|i| (i, i + 1)))?;
    let mut chosen = index::sample(rng, eligible, m - backbone).into_vec();
    chosen.sort_unstable();
    for k in chosen {
        let (j, i) = lower_triangle_pair(k);
        g.add_edge(j, i)?;
    }
    Ok(g)
}

/// Maps `k` in `0..n(n-1)/2` to the pair `(j, i)` with `i < j`, ordered by
/// `j` then `i`.
fn lower_triangle_pair(k: usize) -> (usize, usize) {
    // Largest j with j(j-1)/2 <= k.
    let mut j = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0).floor() as usize;
    while j * (j - 1) / 2 > k {
        j -= 1;
    }
    while (j + 1) * j / 2 <= k {
        j += 1;
    }
    (j, k - j * (j - 1) / 2)
}

/// Directed ring lattice `i -> i+d (mod n)`, `d = 1..=K`, plus random shortcuts.
pub fn gen_smallworld(cfg: &NetConfig, rng: &mut Rng) -> Result<DiGraph> {
    expect_topology(cfg, Topology::SmallWorld)?;
    let n = cfg.n;
    let m = cfg.edge_target();
    let k = ((cfg.k_avg / 2.0).floor() as usize).max(1);
    if k >= n || m < n * k {
        return Err(Error::InvalidConfig(format!(
            "M={m} below the {} lattice edges required for K={k}",
            n * k
        )));
    }
    let mut g = DiGraph::empty(n);
    for i in 0..n {
        for d in 1..=k {
            g.add_edge(i, (i + d) % n)?;
        }
    }
    let need = m - n * k;
    let free = n * (n - 1) - n * k;
    if 2 * need <= free {
        let mut added = 0;
        while added < need {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && g.add_edge(u, v)? {
                added += 1;
            }
        }
    } else {
        // Dense regime: sample directly from the list of free slots.
        let candidates: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && !g.has_edge(u, v))
            .collect();
        let mut chosen = index::sample(rng, candidates.len(), need).into_vec();
        chosen.sort_unstable();
        for c in chosen {
            let (u, v) = candidates[c];
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn gen_scalefree(cfg: &NetConfig, rng: &mut Rng) -> Result<DiGraph> {
    gen_scalefree_with_alpha(cfg, SF_ALPHA, rng)
}

/// Static model: endpoints drawn independently with probability proportional
/// to `(i + 1)^-alpha`; self-loops and duplicates are redrawn.
pub fn gen_scalefree_with_alpha(cfg: &NetConfig, alpha: f64, rng: &mut Rng) -> Result<DiGraph> {
    expect_topology(cfg, Topology::ScaleFree)?;
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::InvalidConfig(format!("alpha={alpha} must be >= 0")));
    }
    let n = cfg.n;
    let m = cfg.edge_target();
    let weights: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(-alpha)).collect();
    let dist = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidConfig(format!("static-model weights: {e}")))?;
    let limit = SF_REJECTION_FACTOR * m;
    let mut edges: HashSet<(usize, usize)> = HashSet::with_capacity(m);
    let mut order = Vec::with_capacity(m);
    let mut rejections = 0;
    while order.len() < m {
        let u = dist.sample(rng);
        let v = dist.sample(rng);
        if u != v && edges.insert((u, v)) {
            order.push((u, v));
            rejections = 0;
        } else {
            rejections += 1;
            if rejections >= limit {
                return Err(Error::SamplingStalled(rejections));
            }
        }
    }
    DiGraph::from_edge_list(n, order)
}
