use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::union_find::UnionFind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(i: usize, j: usize, weight: f64) -> Self {
        Self { i, j, weight }
    }

    fn key(&self) -> (usize, usize) {
        (self.i.min(self.j), self.i.max(self.j))
    }
}

/// Undirected weighted graph in edge-list form.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(labels: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let p = labels.len();
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            let reason = if e.i == e.j {
                Some("self-loop".to_string())
            } else if e.i >= p || e.j >= p {
                Some(format!("endpoint out of range for {p} nodes"))
            } else if !e.weight.is_finite() {
                Some(format!("non-finite weight {}", e.weight))
            } else if !seen.insert(e.key()) {
                Some("duplicate edge".to_string())
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(Error::InvalidEdge { i: e.i, j: e.j, reason });
            }
        }
        Ok(Self { labels, edges })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// Kruskal output: tree edges in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningForest {
    pub labels: Vec<String>,
    pub tree_edges: Vec<Edge>,
    pub component_count: usize,
}

impl SpanningForest {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.tree_edges.iter().map(|e| e.weight).sum()
    }

    pub fn is_tree(&self) -> bool {
        self.component_count == 1
    }
}

/// Ascending order by weight, ties broken by (min endpoint, max endpoint).
pub(crate) fn edge_order(a: &Edge, b: &Edge) -> std::cmp::Ordering {
    a.weight.total_cmp(&b.weight).then_with(|| a.key().cmp(&b.key()))
}

/// Greedy minimum spanning forest.
pub fn kruskal_mst(g: &WeightedGraph) -> Result<SpanningForest> {
    let p = g.node_count();
    if p < 2 {
        return Err(Error::TooFewNodes(p));
    }
    let mut edges = g.edges().to_vec();
    edges.sort_by(edge_order);

    let mut uf = UnionFind::new(p);
    let mut tree_edges = Vec::with_capacity(p - 1);
    for e in edges {
        if uf.union(e.i, e.j) {
            tree_edges.push(e);
            if tree_edges.len() == p - 1 {
                break;
            }
        }
    }
    Ok(SpanningForest {
        labels: g.labels().to_vec(),
        tree_edges,
        component_count: uf.components(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::default_labels;

    fn graph(p: usize, edges: &[(usize, usize, f64)]) -> WeightedGraph {
        let edges = edges.iter().map(|&(i, j, w)| Edge::new(i, j, w)).collect();
        WeightedGraph::new(default_labels(p), edges).unwrap()
    }

    #[test]
    fn triangle() {
        let f = kruskal_mst(&graph(3, &[(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)])).unwrap();
        assert_eq!(f.tree_edges, vec![Edge::new(0, 1, 1.0), Edge::new(1, 2, 2.0)]);
        assert_eq!(f.component_count, 1);
    }

    #[test]
    fn path_is_its_own_tree() {
        let path = [(0, 1, 0.7), (1, 2, 0.2), (2, 3, 0.5)];
        let f = kruskal_mst(&graph(4, &path)).unwrap();
        assert_eq!(f.tree_edges.len(), 3);
        assert!((f.total_weight() - 1.4).abs() < 1e-12);
        let ws: Vec<f64> = f.tree_edges.iter().map(|e| e.weight).collect();
        assert_eq!(ws, vec![0.2, 0.5, 0.7]);
    }

    #[test]
    fn disconnected_forest() {
        let f = kruskal_mst(&graph(5, &[(0, 1, 1.0), (2, 3, 1.0)])).unwrap();
        assert_eq!(f.component_count, 3);
        assert_eq!(f.tree_edges.len() + f.component_count, 5);
    }

    #[test]
    fn ties_break_by_endpoint() {
        let f = kruskal_mst(&graph(3, &[(2, 1, 1.0), (0, 2, 1.0), (1, 0, 1.0)])).unwrap();
        assert_eq!(f.tree_edges, vec![Edge::new(1, 0, 1.0), Edge::new(0, 2, 1.0)]);
    }

    #[test]
    fn validation() {
        assert_eq!(kruskal_mst(&graph(1, &[])), Err(Error::TooFewNodes(1)));
        let labels = default_labels(3);
        for bad in [
            Edge::new(1, 1, 0.0),
            Edge::new(0, 3, 0.0),
            Edge::new(0, 1, f64::INFINITY),
        ] {
            assert!(WeightedGraph::new(labels.clone(), vec![bad]).is_err());
        }
        let dup = vec![Edge::new(0, 1, 1.0), Edge::new(1, 0, 2.0)];
        assert!(matches!(
            WeightedGraph::new(labels, dup),
            Err(Error::InvalidEdge { reason, .. }) if reason == "duplicate edge"
        ));
    }
}
