//! Simple undirected graphs, plus graphs whose vertices carry a linear
//! order (ordinals, or tree nodes ordered by level).

use std::fmt::Display;

use crate::ordinal::Ordinal;

/// A simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list; self-loops and duplicates are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} vertices");
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Self { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Adds `{u, v}`; returns false for self-loops and existing edges.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                true
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The subgraph induced on `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.adj.len()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let pos = &pos;
            self.adj[v]
                .iter()
                .filter_map(move |&w| (pos[w] != usize::MAX && pos[w] > i).then_some((i, pos[w])))
        });
        Graph::from_edges(vertices.len(), edges)
    }

    /// Same vertex set, only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let edges: Vec<_> = self.edges().filter(|&(u, v)| keep(u, v)).collect();
        Graph::from_edges(self.adj.len(), edges)
    }

    /// True iff the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        // a forest has exactly n - c edges
        let mut parent: Vec<usize> = (0..self.adj.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (u, v) in self.edges() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}

/// A vertex label that lives on some level of the ordinals. For ordinals
/// the level is the ordinal itself; for tree nodes it is the node's height.
pub trait Levelled: Ord + Clone + Display {
    fn level(&self) -> &Ordinal;
}

impl Levelled for Ordinal {
    fn level(&self) -> &Ordinal {
        self
    }
}

/// A graph on a linearly ordered, finite vertex set. Vertex indices follow
/// the order, so `u < v` as indices iff `label(u) < label(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdGraph<V> {
    labels: Vec<V>,
    graph: Graph,
}

impl<V: Ord + Clone> OrdGraph<V> {
    /// An edgeless graph; `labels` are sorted and deduplicated.
    pub fn new(mut labels: Vec<V>) -> Self {
        labels.sort();
        labels.dedup();
        let graph = Graph::new(labels.len());
        Self { labels, graph }
    }

    pub fn from_parts(labels: Vec<V>, graph: Graph) -> Self {
        assert!(labels.windows(2).all(|w| w[0] < w[1]), "labels must be strictly increasing");
        assert_eq!(labels.len(), graph.vertex_count());
        Self { labels, graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[V] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &V {
        &self.labels[i]
    }

    pub fn index_of(&self, v: &V) -> Option<usize> {
        self.labels.binary_search(v).ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn add_edge(&mut self, u: &V, v: &V) -> bool {
        let (Some(a), Some(b)) = (self.index_of(u), self.index_of(v)) else {
            panic!("edge endpoint is not a vertex");
        };
        self.graph.add_edge(a, b)
    }

    pub fn has_edge(&self, u: &V, v: &V) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) => self.graph.has_edge(a, b),
            _ => false,
        }
    }

    /// Indices of the neighbors below vertex `i`, increasing.
    pub fn lower_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.neighbors(i).iter().copied().take_while(move |&j| j < i)
    }

    /// `N^<(v)` by label; empty for labels that are not vertices.
    pub fn lower_neighbor_labels(&self, v: &V) -> Vec<V> {
        match self.index_of(v) {
            Some(i) => self.lower_neighbors(i).map(|j| self.labels[j].clone()).collect(),
            None => Vec::new(),
        }
    }

    /// Edges as label pairs `(lower, upper)`.
    pub fn labeled_edges(&self) -> impl Iterator<Item = (&V, &V)> + '_ {
        self.graph.edges().map(|(u, v)| (&self.labels[u], &self.labels[v]))
    }
}
