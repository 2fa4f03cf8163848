//! Directed simple graphs with stable node ids.
//!
//! Nodes are `0..n`. Removing a node clears its incident edges and marks it
//! inactive; ids are never renumbered, so removal sequences and adjacency
//! image coordinates always refer to the original network.

mod edgelist;
mod image;

use std::collections::{HashSet, VecDeque};

pub use edgelist::{read_edge_list, write_edge_list, EDGE_LIST_MAGIC};
pub use image::GrayImage;

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone)]
pub struct DiGraph {
    n: usize,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    edges: HashSet<(u32, u32)>,
    active: Vec<bool>,
    active_count: usize,
}

/// Per-node degree counts over the active subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTable {
    pub in_deg: Vec<usize>,
    pub out_deg: Vec<usize>,
    pub total_deg: Vec<usize>,
}

impl DiGraph {
    /// A graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        assert!(n <= u32::MAX as usize, "node count exceeds u32 id space");
        DiGraph {
            n,
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            edges: HashSet::new(),
            active: vec![true; n],
            active_count: n,
        }
    }

    /// Builds a graph from ordered pairs. Duplicate pairs collapse to one edge.
    pub fn from_edge_list<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = DiGraph::empty(n);
        for (u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts `u -> v`. Returns `false` when the edge was already present.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check_id(u)?;
        self.check_id(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !self.active[u] {
            return Err(Error::NodeRemoved(u));
        }
        if !self.active[v] {
            return Err(Error::NodeRemoved(v));
        }
        if !self.edges.insert((u as u32, v as u32)) {
            return Ok(false);
        }
        self.out_adj[u].push(v as u32);
        self.in_adj[v].push(u as u32);
        Ok(true)
    }

    fn check_id(&self, id: NodeId) -> Result<()> {
        if id >= self.n {
            Err(Error::NodeOutOfRange { id, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Original node count, including removed nodes.
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_active(&self, v: NodeId) -> bool {
        v < self.n && self.active[v]
    }

    pub fn active_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.n).filter(move |&v| self.active[v])
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.n && v < self.n && self.edges.contains(&(u as u32, v as u32))
    }

    pub fn out_neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.out_adj[v].iter().map(|&w| w as usize)
    }

    pub fn in_neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.in_adj[v].iter().map(|&w| w as usize)
    }

    pub(crate) fn out_slice(&self, v: NodeId) -> &[u32] {
        &self.out_adj[v]
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_adj[v].len()
    }

    /// Edges sorted by `(src, dst)`.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out: Vec<(NodeId, NodeId)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u as usize, v as usize))
            .collect();
        out.sort_unstable();
        out
    }

    /// Deletes `v` and every edge touching it.
    pub fn remove_node(&mut self, v: NodeId) -> Result<()> {
        self.check_id(v)?;
        if !self.active[v] {
            return Err(Error::NodeRemoved(v));
        }
        let vid = v as u32;
        for w in std::mem::take(&mut self.out_adj[v]) {
            self.in_adj[w as usize].retain(|&x| x != vid);
            self.edges.remove(&(vid, w));
        }
        for w in std::mem::take(&mut self.in_adj[v]) {
            self.out_adj[w as usize].retain(|&x| x != vid);
            self.edges.remove(&(w, vid));
        }
        self.active[v] = false;
        self.active_count -= 1;
        Ok(())
    }

    pub fn degrees(&self) -> DegreeTable {
        let in_deg: Vec<usize> = self.in_adj.iter().map(Vec::len).collect();
        let out_deg: Vec<usize> = self.out_adj.iter().map(Vec::len).collect();
        let total_deg = in_deg.iter().zip(&out_deg).map(|(a, b)| a + b).collect();
        DegreeTable {
            in_deg,
            out_deg,
            total_deg,
        }
    }

    /// Size of the largest weakly connected component among active nodes.
    pub fn weak_lcc_size(&self) -> Result<usize> {
        if self.active_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        let mut best = 0;
        for start in self.active_nodes() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut size = 0;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for w in self.out_neighbors(u).chain(self.in_neighbors(u)) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            best = best.max(size);
        }
        Ok(best)
    }

    /// `n x n` image with pixel `(u, v)` white iff `u -> v` is an edge.
    pub fn to_adjacency_image(&self) -> GrayImage {
        let mut img = GrayImage::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            img.set(u as usize, v as usize, 1.0);
        }
        img
    }
}

impl PartialEq for DiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.active == other.active && self.edges == other.edges
    }
}

impl Eq for DiGraph {}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> DiGraph {
        DiGraph::from_edge_list(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn from_edge_list_dedups() {
        assert_eq!(path3().edge_count(), 2);
        let g = DiGraph::from_edge_list(3, [(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn from_edge_list_rejects_bad_pairs() {
        assert!(matches!(
            DiGraph::from_edge_list(2, [(0, 0)]),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            DiGraph::from_edge_list(2, [(0, 2)]),
            Err(Error::NodeOutOfRange { id: 2, n: 2 })
        ));
    }

    #[test]
    fn remove_node_drops_incident_edges() {
        let mut g = path3();
        g.remove_node(1).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.active_count(), 2);

        let mut c = DiGraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        c.remove_node(0).unwrap();
        assert_eq!(c.edges(), vec![(1, 2)]);
        assert!(matches!(c.remove_node(0), Err(Error::NodeRemoved(0))));
    }

    #[test]
    fn weak_lcc_examples() {
        assert_eq!(path3().weak_lcc_size().unwrap(), 3);
        assert_eq!(DiGraph::empty(3).weak_lcc_size().unwrap(), 1);
        let g = DiGraph::from_edge_list(4, [(0, 1)]).unwrap();
        assert_eq!(g.weak_lcc_size().unwrap(), 2);
    }

    #[test]
    fn weak_lcc_ignores_direction() {
        // 0 -> 1 <- 2 is weakly but not strongly connected.
        let g = DiGraph::from_edge_list(3, [(0, 1), (2, 1)]).unwrap();
        assert_eq!(g.weak_lcc_size().unwrap(), 3);
    }

    #[test]
    fn weak_lcc_of_fully_removed_graph_errors() {
        let mut g = DiGraph::empty(1);
        g.remove_node(0).unwrap();
        assert!(matches!(g.weak_lcc_size(), Err(Error::EmptyGraph)));
    }

    #[test]
    fn adjacency_image_examples() {
        let g = DiGraph::from_edge_list(2, [(0, 1)]).unwrap();
        assert_eq!(g.to_adjacency_image().pixels(), &[0.0, 1.0, 0.0, 0.0]);
        let e = DiGraph::empty(3).to_adjacency_image();
        assert!(e.pixels().iter().all(|&p| p == 0.0));
        assert_eq!(e.pixels().len(), 9);
        let k2 = DiGraph::from_edge_list(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(k2.to_adjacency_image().pixels(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(path3().degrees().total_deg, vec![1, 2, 1]);
        let star = DiGraph::from_edge_list(3, [(0, 1), (0, 2)]).unwrap();
        let d = star.degrees();
        assert_eq!(d.out_deg[0], 2);
        assert_eq!(d.in_deg[0], 0);
        assert_eq!(DiGraph::empty(4).degrees().total_deg, vec![0; 4]);
    }

    #[test]
    fn removal_reduces_edges_by_incident_count() {
        let g = DiGraph::from_edge_list(4, [(0, 1), (1, 2), (2, 1), (3, 1), (0, 3)]).unwrap();
        let d = g.degrees();
        let mut h = g.clone();
        h.remove_node(1).unwrap();
        assert_eq!(g.edge_count() - h.edge_count(), d.in_deg[1] + d.out_deg[1]);
    }
}
