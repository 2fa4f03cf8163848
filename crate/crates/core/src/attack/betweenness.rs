//! Shortest-path betweenness on the directed, unweighted active subgraph
//! (Brandes accumulation). Scores are raw pair-dependency sums: no endpoint
//! credit and no normalization.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::DiGraph;

/// One score per original node id; removed nodes score 0.
pub fn betweenness(g: &DiGraph) -> Result<Vec<f64>> {
    if g.active_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = g.node_count();
    let mut scores = vec![0.0f64; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);

    for s in g.active_nodes() {
        for &v in &order {
            sigma[v] = 0.0;
            dist[v] = -1;
            delta[v] = 0.0;
            preds[v].clear();
        }
        order.clear();

        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g.out_neighbors(v) {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }

        for &w in order.iter().rev() {
            let coeff = (1.0 + delta[w]) / sigma[w];
            for &v in &preds[w] {
                delta[v] += sigma[v] * coeff;
            }
            if w != s {
                scores[w] += delta[w];
            }
        }
    }
    Ok(scores)
}
