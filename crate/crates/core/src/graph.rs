//! Signed directed interaction graphs.
//!
//! A [`SignedDigraph`] is the sparse form of an interaction matrix: an edge
//! `j -> k` with weight `w` means gene `j` promotes `k` when `w > 0` and
//! represses it when `w < 0`. A missing edge is a neutral pair, so stored
//! weights are always finite and nonzero.
//!
//! Graphs are immutable once built. Adjacency is kept in two CSR tables
//! (outgoing and incoming) holding edge indices, so per-node traversal costs
//! O(degree).

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub source: NodeId,
    pub target: NodeId,
    pub weight: f64,
}

impl Edge {
    pub fn new(source: NodeId, target: NodeId, weight: f64) -> Self {
        Self {
            source,
            target,
            weight,
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Debug, Clone)]
struct Csr {
    offsets: Vec<usize>,
    edge_ids: Vec<usize>,
}

impl Csr {
    fn build(node_count: usize, edges: &[Edge], key: impl Fn(&Edge) -> NodeId) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for e in edges {
            offsets[key(e) + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut edge_ids = vec![0usize; edges.len()];
        for (id, e) in edges.iter().enumerate() {
            let slot = &mut cursor[key(e)];
            edge_ids[*slot] = id;
            *slot += 1;
        }
        Self { offsets, edge_ids }
    }

    fn row(&self, node: NodeId) -> &[usize] {
        &self.edge_ids[self.offsets[node]..self.offsets[node + 1]]
    }
}

/// Directed graph with signed real edge weights over nodes `0..node_count`.
#[derive(Debug, Clone)]
pub struct SignedDigraph {
    node_count: usize,
    edges: Vec<Edge>,
    outgoing: Csr,
    incoming: Csr,
}

impl PartialEq for SignedDigraph {
    fn eq(&self, other: &Self) -> bool {
        self.node_count == other.node_count && self.edges == other.edges
    }
}

impl SignedDigraph {
    /// Builds a graph from `(source, target, weight)` triples, preserving edge order.
    ///
    /// Self-loops and repeated pairs are accepted here; [`clean`] removes them.
    pub fn build<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let edges = edges
            .into_iter()
            .map(|(s, t, w)| Edge::new(s, t, w))
            .collect();
        Self::from_edges(node_count, edges)
    }

    pub fn from_edges(node_count: usize, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            for index in [e.source, e.target] {
                if index >= node_count {
                    return Err(Error::NodeOutOfRange { index, node_count });
                }
            }
            if !e.weight.is_finite() || e.weight == 0.0 {
                return Err(Error::InvalidWeight {
                    source_node: e.source,
                    target: e.target,
                    weight: e.weight,
                });
            }
        }
        Ok(Self::from_valid_edges(node_count, edges))
    }

    /// Caller guarantees every edge already satisfies the graph invariants.
    pub(crate) fn from_valid_edges(node_count: usize, edges: Vec<Edge>) -> Self {
        let outgoing = Csr::build(node_count, &edges, |e| e.source);
        let incoming = Csr::build(node_count, &edges, |e| e.target);
        Self {
            node_count,
            edges,
            outgoing,
            incoming,
        }
    }

    pub fn empty(node_count: usize) -> Self {
        Self::from_valid_edges(node_count, Vec::new())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, node: NodeId) -> impl Iterator<Item = &Edge> + '_ {
        self.outgoing
            .row(node)
            .iter()
            .map(move |&id| &self.edges[id])
    }

    pub fn in_edges(&self, node: NodeId) -> impl Iterator<Item = &Edge> + '_ {
        self.incoming
            .row(node)
            .iter()
            .map(move |&id| &self.edges[id])
    }

    pub fn out_degree(&self, node: NodeId) -> usize {
        self.outgoing.row(node).len()
    }

    pub fn in_degree(&self, node: NodeId) -> usize {
        self.incoming.row(node).len()
    }

    /// Distinct nodes adjacent to `node` through an in- or out-edge, excluding itself.
    pub fn neighbors(&self, node: NodeId) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self
            .out_edges(node)
            .map(|e| e.target)
            .chain(self.in_edges(node).map(|e| e.source))
            .filter(|&v| v != node)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn has_self_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_self_loop)
    }

    pub fn has_duplicate_edges(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        !self.edges.iter().all(|e| seen.insert((e.source, e.target)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    /// Mean number of distinct in-or-out neighbours per node.
    pub avg_neighbors: f64,
    /// Largest distinct-neighbour count.
    pub max_degree: usize,
    /// Distinct-neighbour count -> number of nodes with that count.
    pub degree_histogram: BTreeMap<usize, usize>,
}

/// Per-node distinct-neighbour counts.
pub fn neighbor_counts(g: &SignedDigraph) -> Vec<usize> {
    let n = g.node_count();
    // stamp[v] == u + 1 marks v as already counted for node u
    let mut stamp = vec![0usize; n];
    (0..n)
        .map(|u| {
            let mut count = 0;
            let ends = g
                .out_edges(u)
                .map(|e| e.target)
                .chain(g.in_edges(u).map(|e| e.source));
            for v in ends {
                if v != u && stamp[v] != u + 1 {
                    stamp[v] = u + 1;
                    count += 1;
                }
            }
            count
        })
        .collect()
}

pub fn degree_stats(g: &SignedDigraph) -> DegreeStats {
    let counts = neighbor_counts(g);
    let mut degree_histogram = BTreeMap::new();
    for &c in &counts {
        *degree_histogram.entry(c).or_insert(0) += 1;
    }
    let avg_neighbors = if counts.is_empty() {
        0.0
    } else {
        counts.iter().sum::<usize>() as f64 / counts.len() as f64
    };
    DegreeStats {
        avg_neighbors,
        max_degree: counts.iter().copied().max().unwrap_or(0),
        degree_histogram,
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Weakly connected components, each sorted, ordered by their smallest node.
pub fn weak_components(g: &SignedDigraph) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut sets = DisjointSets::new(n);
    for e in g.edges() {
        sets.union(e.source, e.target);
    }
    let mut slot_of_root = vec![usize::MAX; n];
    let mut components: Vec<Vec<NodeId>> = Vec::new();
    for v in 0..n {
        let root = sets.find(v);
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = components.len();
            components.push(Vec::new());
        }
        components[slot_of_root[root]].push(v);
    }
    components
}

/// Which weakly connected components survive cleaning.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ComponentFilter {
    /// Keep components with at least this many nodes.
    MinSize(usize),
    /// Keep only components as large as the largest one.
    #[default]
    Giant,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CleanConfig {
    pub components: ComponentFilter,
    /// Treat `b -> a` as a duplicate of an earlier `a -> b`. Useful for
    /// interaction lists whose pairs carry no direction.
    pub undirected_duplicates: bool,
}

#[derive(Debug, Clone)]
pub struct Cleaned {
    pub graph: SignedDigraph,
    /// `index_map[old]` is the node's new index, or `None` if it was dropped.
    pub index_map: Vec<Option<NodeId>>,
}

/// Drops self-loops, repeated `(source, target)` pairs (first kept), and every
/// weak component smaller than `min_component_size`; survivors are re-indexed
/// densely in their original order.
pub fn clean(g: &SignedDigraph, min_component_size: usize) -> Cleaned {
    clean_with(
        g,
        &CleanConfig {
            components: ComponentFilter::MinSize(min_component_size),
            undirected_duplicates: false,
        },
    )
}

pub fn clean_with(g: &SignedDigraph, cfg: &CleanConfig) -> Cleaned {
    let mut seen = HashSet::with_capacity(g.edge_count());
    let kept: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| !e.is_self_loop())
        .filter(|e| {
            let key = if cfg.undirected_duplicates {
                (e.source.min(e.target), e.source.max(e.target))
            } else {
                (e.source, e.target)
            };
            seen.insert(key)
        })
        .copied()
        .collect();
    let stripped = SignedDigraph::from_valid_edges(g.node_count(), kept);

    let components = weak_components(&stripped);
    let threshold = match cfg.components {
        ComponentFilter::MinSize(k) => k,
        ComponentFilter::Giant => components.iter().map(Vec::len).max().unwrap_or(0),
    };
    let mut alive = vec![false; g.node_count()];
    for comp in components.iter().filter(|c| c.len() >= threshold) {
        for &v in comp {
            alive[v] = true;
        }
    }

    let mut next = 0;
    let index_map: Vec<Option<NodeId>> = alive
        .iter()
        .map(|&keep| {
            keep.then(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    let edges = stripped
        .edges()
        .iter()
        .filter_map(|e| {
            Some(Edge::new(
                index_map[e.source]?,
                index_map[e.target]?,
                e.weight,
            ))
        })
        .collect();
    Cleaned {
        graph: SignedDigraph::from_valid_edges(next, edges),
        index_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize, f64)]) -> SignedDigraph {
        SignedDigraph::build(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge_degrees() {
        let g = g(2, &[(0, 1, 1.0)]);
        assert_eq!(g.out_degree(0), 1);
        assert_eq!(g.in_degree(1), 1);
        assert_eq!(g.in_degree(0), 0);
    }

    #[test]
    fn empty_graph_has_zero_neighbors() {
        let g = SignedDigraph::build(3, []).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(degree_stats(&g).avg_neighbors, 0.0);
        let g5 = SignedDigraph::empty(5);
        let stats = degree_stats(&g5);
        assert_eq!(stats.avg_neighbors, 0.0);
        assert_eq!(stats.degree_histogram.get(&0), Some(&5));
    }

    #[test]
    fn three_node_adjacency() {
        let g = g(3, &[(0, 1, 2.0), (0, 2, -1.0), (1, 2, 3.0)]);
        assert_eq!(g.out_degree(0), 2);
        assert_eq!(g.in_degree(2), 2);
        let into_two: Vec<_> = g.in_edges(2).map(|e| (e.source, e.weight)).collect();
        assert_eq!(into_two, vec![(0, -1.0), (1, 3.0)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            SignedDigraph::build(2, [(0, 2, 1.0)]),
            Err(Error::NodeOutOfRange { index: 2, .. })
        ));
        assert!(matches!(
            SignedDigraph::build(2, [(0, 1, 0.0)]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(matches!(
            SignedDigraph::build(2, [(0, 1, f64::NAN)]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(SignedDigraph::build(2, [(0, 1, f64::INFINITY)]).is_err());
    }

    #[test]
    fn path_average_neighbors() {
        let g = g(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        let stats = degree_stats(&g);
        assert!((stats.avg_neighbors - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(stats.max_degree, 2);
        assert_eq!(stats.degree_histogram.values().sum::<usize>(), 3);
    }

    #[test]
    fn reciprocal_edges_count_one_neighbor() {
        let g = g(2, &[(0, 1, 1.0), (1, 0, -1.0), (0, 0, 1.0)]);
        assert_eq!(g.neighbors(0), vec![1]);
        assert_eq!(degree_stats(&g).avg_neighbors, 1.0);
    }

    #[test]
    fn components_examples() {
        let two = g(4, &[(0, 1, 1.0), (2, 3, 1.0)]);
        assert_eq!(weak_components(&two), vec![vec![0, 1], vec![2, 3]]);
        let converge = g(3, &[(0, 1, 1.0), (2, 1, 1.0)]);
        assert_eq!(weak_components(&converge), vec![vec![0, 1, 2]]);
        let empty = SignedDigraph::empty(3);
        assert_eq!(weak_components(&empty), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn clean_drops_self_loop() {
        let raw = g(2, &[(0, 0, 1.0), (0, 1, 1.0)]);
        let c = clean(&raw, 1);
        assert_eq!(c.graph.node_count(), 2);
        assert_eq!(c.graph.edges(), &[Edge::new(0, 1, 1.0)]);
    }

    #[test]
    fn clean_keeps_first_duplicate() {
        let raw = g(2, &[(0, 1, 2.0), (0, 1, -5.0), (1, 0, 3.0)]);
        let c = clean(&raw, 1);
        assert_eq!(
            c.graph.edges(),
            &[Edge::new(0, 1, 2.0), Edge::new(1, 0, 3.0)]
        );
        let undirected = clean_with(
            &raw,
            &CleanConfig {
                components: ComponentFilter::MinSize(1),
                undirected_duplicates: true,
            },
        );
        assert_eq!(undirected.graph.edges(), &[Edge::new(0, 1, 2.0)]);
    }

    #[test]
    fn clean_drops_small_islands() {
        // 5-node path on 0..5 and a 2-node pair on 5,6
        let raw = g(
            7,
            &[
                (0, 1, 1.0),
                (1, 2, -1.0),
                (3, 2, 1.0),
                (3, 4, 1.0),
                (6, 5, -1.0),
            ],
        );
        let c = clean(&raw, 3);
        assert_eq!(c.graph.node_count(), 5);
        assert_eq!(c.graph.edge_count(), 4);
        assert_eq!(c.index_map[5], None);
        assert_eq!(c.index_map[6], None);
        assert_eq!(c.index_map[4], Some(4));

        let giant = clean_with(&raw, &CleanConfig::default());
        assert_eq!(giant.graph, c.graph);
    }

    #[test]
    fn clean_reindexes_densely() {
        // node 0 isolated, so 1,2 shift down
        let raw = g(3, &[(1, 2, -2.0)]);
        let c = clean(&raw, 2);
        assert_eq!(c.index_map, vec![None, Some(0), Some(1)]);
        assert_eq!(c.graph.edges(), &[Edge::new(0, 1, -2.0)]);
    }

    #[test]
    fn clean_to_empty_is_legal() {
        let raw = g(3, &[(0, 0, 1.0)]);
        let c = clean(&raw, 2);
        assert_eq!(c.graph.node_count(), 0);
        assert_eq!(c.graph.edge_count(), 0);
    }
}
