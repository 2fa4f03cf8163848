use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{betweenness, min_driver_nodes};
use crate::error::{Error, Result};
use crate::graph::{DiGraph, NodeId};
use crate::rng::{seeded, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strategy {
    /// Uniformly random victim.
    #[serde(rename = "RA")]
    Random,
    /// Highest betweenness first.
    #[serde(rename = "TB")]
    Betweenness,
    /// Highest total (in + out) degree first.
    #[serde(rename = "TD")]
    Degree,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Random, Strategy::Betweenness, Strategy::Degree];

    pub fn code(self) -> &'static str {
        match self {
            Strategy::Random => "RA",
            Strategy::Betweenness => "TB",
            Strategy::Degree => "TD",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ra" => Ok(Strategy::Random),
            "tb" => Ok(Strategy::Betweenness),
            "td" => Ok(Strategy::Degree),
            _ => Err(Error::InvalidConfig(format!(
                "unknown strategy {s:?} (expected ra, tb or td)"
            ))),
        }
    }
}

#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum AttackMode {
    /// Scores recomputed on the damaged graph as removals proceed.
    #[default]
    Adaptive,
    /// Scores ranked once on the intact graph.
    Static,
}

impl fmt::Display for AttackMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttackMode::Adaptive => "adaptive",
            AttackMode::Static => "static",
        })
    }
}

impl FromStr for AttackMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "adaptive" => Ok(AttackMode::Adaptive),
            "static" => Ok(AttackMode::Static),
            _ => Err(Error::InvalidConfig(format!(
                "unknown attack mode {s:?} (expected adaptive or static)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    /// Largest weak component fraction `c(i) / (N - i)`.
    Connectivity,
    /// Driver-node fraction `N_D(i) / (N - i)`.
    Controllability,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveKind::Connectivity => "connectivity",
            CurveKind::Controllability => "controllability",
        })
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "connectivity" => Ok(CurveKind::Connectivity),
            "controllability" => Ok(CurveKind::Controllability),
            _ => Err(Error::InvalidConfig(format!(
                "unknown curve kind {s:?} (expected connectivity or controllability)"
            ))),
        }
    }
}

fn default_recompute() -> usize {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackSpec {
    pub strategy: Strategy,
    #[serde(default)]
    pub mode: AttackMode,
    pub seed: u64,
    /// Adaptive mode recomputes scores every `recompute_every` removals.
    #[serde(default = "default_recompute")]
    pub recompute_every: usize,
}

impl AttackSpec {
    pub fn new(strategy: Strategy, mode: AttackMode, seed: u64) -> Self {
        AttackSpec {
            strategy,
            mode,
            seed,
            recompute_every: 1,
        }
    }

    pub fn rng(&self) -> Rng {
        seeded(self.seed)
    }
}

/// Order in which every node of the attacked graph is removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalSequence(Vec<NodeId>);

impl RemovalSequence {
    /// Checks that `order` is a permutation of `0..n`.
    pub fn new(order: Vec<NodeId>, n: usize) -> Result<Self> {
        if order.len() != n {
            return Err(Error::InvalidSequence(format!(
                "{} entries for a graph with {n} nodes",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(Error::InvalidSequence(format!("node {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidSequence(format!("node {v} appears twice")));
            }
        }
        Ok(RemovalSequence(order))
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessCurve {
    pub kind: CurveKind,
    pub values: Vec<f64>,
}

impl RobustnessCurve {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Curve value on the current graph: the measured count over active nodes.
pub fn curve_value(g: &DiGraph, kind: CurveKind) -> Result<f64> {
    let count = match kind {
        CurveKind::Connectivity => g.weak_lcc_size()?,
        CurveKind::Controllability => min_driver_nodes(g)?,
    };
    Ok(count as f64 / g.active_count() as f64)
}

fn ensure_intact(g: &DiGraph) -> Result<()> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.active_count() != g.node_count() {
        return Err(Error::InvalidConfig(
            "attacks must start from an intact graph".into(),
        ));
    }
    Ok(())
}

/// Relative slack under which two float scores count as tied.
const TIE_EPS: f64 = 1e-9;

/// Highest-scoring active node; ties resolve to the smallest id.
fn argmax_active(g: &DiGraph, scores: &[f64]) -> NodeId {
    let mut best: Option<(NodeId, f64)> = None;
    for v in g.active_nodes() {
        let s = scores[v];
        match best {
            Some((_, b)) if s <= b + TIE_EPS * b.abs().max(1.0) => {}
            _ => best = Some((v, s)),
        }
    }
    best.expect("at least one active node").0
}

fn targeted_scores(g: &DiGraph, strategy: Strategy) -> Result<Vec<f64>> {
    match strategy {
        Strategy::Degree => Ok(g
            .degrees()
            .total_deg
            .into_iter()
            .map(|d| d as f64)
            .collect()),
        Strategy::Betweenness => betweenness(g),
        Strategy::Random => unreachable!("random attacks do not score nodes"),
    }
}

/// Removes every node of `g` in the order chosen by `spec`, sampling the
/// curve before each removal so `values[0]` describes the intact graph.
pub fn simulate_attack(
    g: &DiGraph,
    spec: &AttackSpec,
    kind: CurveKind,
    rng: &mut Rng,
) -> Result<(RemovalSequence, RobustnessCurve)> {
    ensure_intact(g)?;
    if spec.recompute_every == 0 {
        return Err(Error::InvalidConfig("recompute_every must be >= 1".into()));
    }
    let n = g.node_count();
    let mut work = g.clone();
    let mut order = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    let mut remaining: Vec<NodeId> = (0..n).collect();
    let mut scores: Vec<f64> = Vec::new();

    for step in 0..n {
        values.push(curve_value(&work, kind)?);
        let victim = match spec.strategy {
            Strategy::Random => remaining.swap_remove(rng.gen_range(0..remaining.len())),
            targeted => {
                let refresh = step == 0
                    || (spec.mode == AttackMode::Adaptive && step % spec.recompute_every == 0);
                if refresh {
                    scores = targeted_scores(&work, targeted)?;
                }
                argmax_active(&work, &scores)
            }
        };
        work.remove_node(victim)?;
        order.push(victim);
    }
    Ok((RemovalSequence(order), RobustnessCurve { kind, values }))
}

/// Re-evaluates a stored removal order on the intact graph.
pub fn replay_curve(
    g: &DiGraph,
    order: &RemovalSequence,
    kind: CurveKind,
) -> Result<RobustnessCurve> {
    ensure_intact(g)?;
    let order = RemovalSequence::new(order.0.clone(), g.node_count())?;
    let mut work = g.clone();
    let mut values = Vec::with_capacity(order.len());
    for &victim in order.as_slice() {
        values.push(curve_value(&work, kind)?);
        work.remove_node(victim)?;
    }
    Ok(RobustnessCurve { kind, values })
}

/// Mean of `realizations` independent random-attack curves drawn from `rng`.
pub fn averaged_random_curve(
    g: &DiGraph,
    kind: CurveKind,
    realizations: usize,
    rng: &mut Rng,
) -> Result<RobustnessCurve> {
    if realizations == 0 {
        return Err(Error::InvalidConfig("realizations must be >= 1".into()));
    }
    let spec = AttackSpec::new(Strategy::Random, AttackMode::Adaptive, 0);
    let mut sum = vec![0.0; g.node_count()];
    for _ in 0..realizations {
        let (_, curve) = simulate_attack(g, &spec, kind, rng)?;
        sum.iter_mut().zip(&curve.values).for_each(|(s, v)| *s += v);
    }
    let r = realizations as f64;
    Ok(RobustnessCurve {
        kind,
        values: sum.into_iter().map(|s| s / r).collect(),
    })
}
