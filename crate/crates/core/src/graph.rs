//! Immutable labeled undirected simple graphs with bitset adjacency.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;

/// An undirected edge `{u, v}` stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    pub u: usize,
    pub v: usize,
}

impl EdgeId {
    /// Normalises the endpoint order. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        if a < b {
            EdgeId { u: a, v: b }
        } else {
            EdgeId { u: b, v: a }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    DuplicateLabel(String),
    UnknownLabel(String),
    SelfLoop(String),
    /// Labels must be non-empty and free of whitespace so the text codec can carry them.
    InvalidLabel(String),
    IndexOutOfRange { index: usize, vertex_count: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateLabel(l) => write!(f, "duplicate vertex label `{l}`"),
            GraphError::UnknownLabel(l) => write!(f, "unknown vertex label `{l}`"),
            GraphError::SelfLoop(l) => write!(f, "self-loop on vertex `{l}`"),
            GraphError::InvalidLabel(l) => write!(f, "invalid vertex label `{l}`"),
            GraphError::IndexOutOfRange { index, vertex_count } => {
                write!(f, "vertex index {index} out of range for {vertex_count} vertices")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// Undirected simple graph. Vertex identity is the label; index order is construction order.
#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<BitSet>,
    edges: Vec<EdgeId>,
}

impl Graph {
    /// Builds a graph from labels and label-pair edges. Duplicate edges collapse.
    pub fn build<L, A, B>(labels: impl IntoIterator<Item = L>, edges: impl IntoIterator<Item = (A, B)>) -> Result<Self, GraphError>
    where
        L: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let index = index_labels(&labels)?;
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| GraphError::UnknownLabel(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| GraphError::UnknownLabel(b.to_string()))?;
            if ia == ib {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            pairs.push((ia, ib));
        }
        Ok(Self::assemble(labels, index, pairs))
    }

    /// Builds a graph from labels and 0-based index pairs. Duplicate edges collapse.
    pub fn from_index_edges(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::IndexOutOfRange { index: x, vertex_count: n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(labels[a].clone()));
            }
            pairs.push((a, b));
        }
        Ok(Self::assemble(labels, index, pairs))
    }

    /// Vertices labeled `1..=n`.
    pub fn numbered(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        Self::from_index_edges((1..=n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Self::numbered(n, edges).expect("complete graph is well formed")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Self::numbered(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is well formed")
    }

    /// The wheel `W_rim`: a rim cycle on `rim` vertices plus a hub adjacent to all of them.
    pub fn wheel(rim: usize) -> Self {
        let edges = (0..rim).map(|i| (i, (i + 1) % rim)).chain((0..rim).map(|i| (i, rim)));
        Self::numbered(rim + 1, edges).expect("wheel is well formed")
    }

    fn assemble(labels: Vec<String>, index: BTreeMap<String, usize>, pairs: Vec<(usize, usize)>) -> Self {
        let n = labels.len();
        let mut adj: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for (a, b) in pairs {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let edges = (0..n)
            .flat_map(|u| adj[u].iter().filter(move |&v| v > u).map(move |v| EdgeId { u, v }))
            .collect();
        Graph { labels, index, adj, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges sorted lexicographically by `(u, v)`.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Position of `{a, b}` in [`Graph::edges`].
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.edges.binary_search(&EdgeId::new(a, b)).ok()
    }

    /// Edge set as label pairs with the endpoints sorted as strings.
    pub fn label_edge_set(&self) -> alloc::collections::BTreeSet<(String, String)> {
        self.edges
            .iter()
            .map(|e| {
                let (a, b) = (self.labels[e.u].clone(), self.labels[e.v].clone());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    /// Same labels; distinct vertices are adjacent iff they are not adjacent here.
    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| !self.adjacent(a, b));
        let pairs = edges.collect();
        Self::assemble(self.labels.clone(), self.index.clone(), pairs)
    }

    /// Induced subgraph on `keep`, in this graph's vertex order.
    pub fn induced_subgraph<S: AsRef<str>>(&self, keep: impl IntoIterator<Item = S>) -> Result<Graph, GraphError> {
        let mut chosen = BitSet::new(self.vertex_count());
        for l in keep {
            let l = l.as_ref();
            let v = self.vertex(l).ok_or_else(|| GraphError::UnknownLabel(l.to_string()))?;
            chosen.insert(v);
        }
        Ok(self.induced_by_indices(&chosen))
    }

    pub fn induced_by_indices(&self, keep: &BitSet) -> Graph {
        let old: Vec<usize> = keep.iter().collect();
        let mut renumber = alloc::vec![usize::MAX; self.vertex_count()];
        for (new, &o) in old.iter().enumerate() {
            renumber[o] = new;
        }
        let labels: Vec<String> = old.iter().map(|&o| self.labels[o].clone()).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let pairs = self
            .edges
            .iter()
            .filter(|e| keep.contains(e.u) && keep.contains(e.v))
            .map(|e| (renumber[e.u], renumber[e.v]))
            .collect();
        Self::assemble(labels, index, pairs)
    }

    /// The graph with vertex `v` removed.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let mut keep = BitSet::new(self.vertex_count());
        (0..self.vertex_count()).filter(|&i| i != v).for_each(|i| keep.insert(i));
        self.induced_by_indices(&keep)
    }

    /// Same structure, new labels (one per vertex, in index order).
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Graph, GraphError> {
        if labels.len() != self.vertex_count() {
            return Err(GraphError::IndexOutOfRange { index: labels.len(), vertex_count: self.vertex_count() });
        }
        Self::from_index_edges(labels, self.edges.iter().map(|e| (e.u, e.v)))
    }
}

fn index_labels(labels: &[String]) -> Result<BTreeMap<String, usize>, GraphError> {
    let mut index = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() || l.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(GraphError::InvalidLabel(l.clone()));
        }
        if index.insert(l.clone(), i).is_some() {
            return Err(GraphError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edge_count())
            .finish()
    }
}
