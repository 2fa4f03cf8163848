//! Independent reference implementations used by the integration and
//! acceptance tests. Each favours obviousness over speed.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::Path;

use netrobust_core::graph::DiGraph;
use netrobust_core::rng::Rng;
use rand::Rng as _;
use sha2::{Digest, Sha256};

/// Each ordered pair `(u, v)`, `u != v`, present independently with
/// probability `p`.
pub fn random_digraph(n: usize, p: f64, rng: &mut Rng) -> DiGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    DiGraph::from_edge_list(n, edges).unwrap()
}

/// Largest matching by trying every assignment of left copies to unused
/// right copies (or to nothing).
pub fn brute_force_matching(g: &DiGraph) -> usize {
    fn go(g: &DiGraph, left: &[usize], used: &mut Vec<bool>) -> usize {
        let Some((&u, rest)) = left.split_first() else {
            return 0;
        };
        let mut best = go(g, rest, used);
        for v in g.out_neighbors(u) {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + go(g, rest, used));
                used[v] = false;
            }
        }
        best
    }
    let left: Vec<usize> = g.active_nodes().collect();
    go(g, &left, &mut vec![false; g.node_count()])
}

/// Betweenness from the list of every simple path between every ordered
/// pair of active nodes.
pub fn path_enumeration_betweenness(g: &DiGraph) -> Vec<f64> {
    fn walk(g: &DiGraph, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for v in g.out_neighbors(u) {
            if !path.contains(&v) {
                path.push(v);
                walk(g, t, path, out);
                path.pop();
            }
        }
    }
    let n = g.node_count();
    let mut score = vec![0.0; n];
    let nodes: Vec<usize> = g.active_nodes().collect();
    for &s in &nodes {
        for &t in &nodes {
            if s == t {
                continue;
            }
            let mut paths = Vec::new();
            walk(g, t, &mut vec![s], &mut paths);
            let Some(shortest) = paths.iter().map(Vec::len).min() else {
                continue;
            };
            let geodesics: Vec<&Vec<usize>> =
                paths.iter().filter(|p| p.len() == shortest).collect();
            let total = geodesics.len() as f64;
            for (v, acc) in score.iter_mut().enumerate() {
                let through = geodesics
                    .iter()
                    .filter(|p| p[1..p.len() - 1].contains(&v))
                    .count();
                *acc += through as f64 / total;
            }
        }
    }
    score
}

/// Largest weakly connected component by union-find over the edge list.
pub fn union_find_lcc(g: &DiGraph) -> usize {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
        }
    }
    let mut size = vec![0usize; n];
    for v in g.active_nodes() {
        let r = find(&mut parent, v);
        size[r] += 1;
    }
    size.into_iter().max().unwrap_or(0)
}

/// `U_x` by direct pair comparison.
pub fn pair_count_u(x: &[f64], y: &[f64]) -> f64 {
    let mut u = 0.0;
    for &a in x {
        for &b in y {
            if a > b {
                u += 1.0;
            } else if a == b {
                u += 0.5;
            }
        }
    }
    u
}

/// Exact Mann-Whitney p-values by enumerating every split of the pooled
/// sample into groups of the original sizes. Returns (greater, two-sided),
/// where "greater" is the lower tail of `U_x`.
pub fn enumerated_mwu_p(x: &[f64], y: &[f64]) -> (f64, f64) {
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let total = pooled.len();
    let observed = pair_count_u(x, y);
    let (mut le, mut ge, mut count) = (0u64, 0u64, 0u64);
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != x.len() {
            continue;
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, &v) in pooled.iter().enumerate() {
            if mask & (1 << i) != 0 {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        let u = pair_count_u(&a, &b);
        count += 1;
        if u <= observed + 1e-12 {
            le += 1;
        }
        if u >= observed - 1e-12 {
            ge += 1;
        }
    }
    let lower = le as f64 / count as f64;
    let upper = ge as f64 / count as f64;
    (lower, (2.0 * lower.min(upper)).min(1.0))
}

/// SHA-256 over every file under `root`: sorted relative paths and contents.
pub fn tree_hash(root: &Path) -> String {
    let mut files = BTreeSet::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                files.insert(p.strip_prefix(root).unwrap().to_path_buf());
            }
        }
    }
    let mut h = Sha256::new();
    for rel in &files {
        h.update(rel.to_string_lossy().as_bytes());
        h.update([0u8]);
        h.update(std::fs::read(root.join(rel)).unwrap());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n
}

/// Upper-tail p-value of Pearson's chi-square statistic.
pub fn chi_square_p(observed: &[f64], expected: &[f64]) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(o, e)| (o - e).powi(2) / e)
        .sum();
    let df = (observed.len() - 1) as f64;
    1.0 - ChiSquared::new(df).unwrap().cdf(stat)
}
