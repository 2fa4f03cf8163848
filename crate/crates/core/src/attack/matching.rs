//! Maximum matching on the out-copy/in-copy bipartite split of a digraph.
//!
//! Each active node `u` appears once on the left (`u+`) and once on the
//! right (`u-`); a directed edge `u -> v` becomes the bipartite edge
//! `(u+, v-)`. The minimum number of driver nodes is
//! `max(1, N_active - |maximum matching|)`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, NodeId};

const NIL: usize = usize::MAX;
const INF: usize = usize::MAX;

/// Matched edges `u -> v`, at most one per source and one per target.
pub fn maximum_matching(g: &DiGraph) -> Vec<(NodeId, NodeId)> {
    let (match_left, _) = hopcroft_karp(g);
    match_left
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v != NIL)
        .map(|(u, &v)| (u, v))
        .collect()
}

pub fn maximum_matching_size(g: &DiGraph) -> usize {
    let (match_left, _) = hopcroft_karp(g);
    match_left.iter().filter(|&&v| v != NIL).count()
}

/// Minimum driver-node count `max(1, N - |E*|)` over the active subgraph.
pub fn min_driver_nodes(g: &DiGraph) -> Result<usize> {
    if g.active_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(g.active_count()
        .saturating_sub(maximum_matching_size(g))
        .max(1))
}

/// Hopcroft-Karp, `O(E sqrt(V))`. Removed nodes have no edges and stay
/// unmatched.
fn hopcroft_karp(g: &DiGraph) -> (Vec<usize>, Vec<usize>) {
    let n = g.node_count();
    let mut match_left = vec![NIL; n];
    let mut match_right = vec![NIL; n];
    let mut dist = vec![INF; n];
    let mut cursor = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut via: Vec<usize> = Vec::new();

    // Greedy warm start.
    for u in g.active_nodes() {
        if let Some(&v) = g
            .out_slice(u)
            .iter()
            .find(|&&v| match_right[v as usize] == NIL)
        {
            match_left[u] = v as usize;
            match_right[v as usize] = u;
        }
    }

    loop {
        // Layer the free left vertices.
        queue.clear();
        for u in g.active_nodes() {
            if match_left[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.out_slice(u) {
                let w = match_right[v as usize];
                if w == NIL {
                    reachable_free = true;
                } else if dist[w] == INF {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free {
            break;
        }

        // Vertex-disjoint shortest augmenting paths, iterative DFS.
        cursor.iter_mut().for_each(|c| *c = 0);
        for root in g.active_nodes() {
            if match_left[root] != NIL {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(root);
            while let Some(&u) = stack.last() {
                let adj = g.out_slice(u);
                if cursor[u] == adj.len() {
                    dist[u] = INF;
                    stack.pop();
                    via.pop();
                    continue;
                }
                let v = adj[cursor[u]] as usize;
                cursor[u] += 1;
                let w = match_right[v];
                if w == NIL {
                    via.push(v);
                    for (&l, &r) in stack.iter().zip(&via) {
                        match_left[l] = r;
                        match_right[r] = l;
                    }
                    break;
                }
                if dist[w] != INF && dist[w] == dist[u] + 1 {
                    via.push(v);
                    stack.push(w);
                }
            }
        }
    }
    (match_left, match_right)
}

/// Plain augmenting-path (Kuhn) matching size, `O(V E)`. Kept as an
/// independent cross-check for the Hopcroft-Karp engine.
pub fn augmenting_path_matching_size(g: &DiGraph) -> usize {
    fn try_kuhn(g: &DiGraph, u: usize, seen: &mut [bool], match_right: &mut [usize]) -> bool {
        for v in g.out_neighbors(u) {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if match_right[v] == NIL || try_kuhn(g, match_right[v], seen, match_right) {
                match_right[v] = u;
                return true;
            }
        }
        false
    }

    let n = g.node_count();
    let mut match_right = vec![NIL; n];
    let mut seen = vec![false; n];
    let mut size = 0;
    for u in g.active_nodes() {
        seen.iter_mut().for_each(|s| *s = false);
        if try_kuhn(g, u, &mut seen, &mut match_right) {
            size += 1;
        }
    }
    size
}
