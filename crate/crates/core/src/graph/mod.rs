//! Simple undirected graphs with dense vertex ids and the structural
//! primitives the rest of the crate is built on.

mod canon;
mod chordal;
mod decompose;
pub mod io;
mod trees;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{canonical_key, canonical_key_with_limit, CanonicalKey, DEFAULT_CANON_LIMIT};
pub use decompose::{Block, BlockDecomposition};
pub use trees::{spanning_tree_count, SpanningTrees, DEFAULT_TREE_CAP};

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("endpoint {endpoint} out of range for graph on {n} vertices")]
    EndpointOutOfRange { endpoint: Vertex, n: usize },
    #[error("edge {0} is not in the graph")]
    AbsentEdge(Edge),
    #[error("vertex {0} is not in the graph")]
    AbsentVertex(Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("canonical form limited to {limit} vertices, got {n}")]
    CanonLimit { n: usize, limit: usize },
    #[error("vertex set {0:?} does not induce a clique")]
    NotAClique(Vec<Vertex>),
    #[error("clique sizes differ: {0} vs {1}")]
    CliqueSizeMismatch(usize, usize),
    #[error("clique gluing requires k >= 1")]
    EmptyClique,
    #[error("parse error: {0}")]
    Parse(String),
}

/// An undirected edge, always stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Normalizes the endpoint order. Loops are representable here and
    /// rejected by [`Graph::new`].
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(self) -> Vertex {
        self.u
    }

    pub fn v(self) -> Vertex {
        self.v
    }

    pub fn ends(self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn other(self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// The `"u-v"` key used by the JSON formats.
    pub fn key(self) -> String {
        format!("{}-{}", self.u, self.v)
    }

    pub fn parse_key(s: &str) -> Result<Edge, GraphError> {
        let (a, b) = s
            .split_once('-')
            .ok_or_else(|| GraphError::Parse(format!("bad edge key {s:?}")))?;
        let a = a
            .trim()
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad edge key {s:?}")))?;
        let b = b
            .trim()
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad edge key {s:?}")))?;
        Ok(Edge::new(a, b))
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = GraphError;
    fn try_from(p: [usize; 2]) -> Result<Self, GraphError> {
        if p[0] == p[1] {
            return Err(GraphError::Loop(p[0]));
        }
        Ok(Edge::new(p[0], p[1]))
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are kept sorted, so edge indices are stable and deterministic;
/// several modules use them to index per-edge data.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut list: Vec<Edge> = Vec::new();
        for e in edges {
            let e = e.into();
            if e.u == e.v {
                return Err(GraphError::Loop(e.u));
            }
            if e.v >= n {
                return Err(GraphError::EndpointOutOfRange { endpoint: e.v, n });
            }
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        Ok(Self::from_sorted(n, list))
    }

    /// Builds from an edge list that may contain repeats; duplicates are merged.
    pub(crate) fn from_edges_merging(n: usize, mut list: Vec<Edge>) -> Self {
        list.sort_unstable();
        list.dedup();
        Self::from_sorted(n, list)
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    fn require_edge(&self, e: Edge) -> Result<usize, GraphError> {
        self.edge_index(e).ok_or(GraphError::AbsentEdge(e))
    }

    /// |E| − |V| + c.
    pub fn cyclomatic_number(&self) -> usize {
        self.m() + self.components().len() - self.n
    }

    pub fn common_neighbors(&self, a: Vertex, b: Vertex) -> usize {
        let (x, y) = (&self.adj[a], &self.adj[b]);
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    pub fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| {
            a < self.n && vs[i + 1..].iter().all(|&b| a != b && self.has_edge(a, b))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn delete_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        let idx = self.require_edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Ok(Self::from_sorted(self.n, edges))
    }

    /// Removes `v` and shifts every larger id down by one. The returned map
    /// sends old ids to new ids (`None` for `v`).
    pub fn delete_vertex(&self, v: Vertex) -> Result<(Graph, Vec<Option<Vertex>>), GraphError> {
        if v >= self.n {
            return Err(GraphError::AbsentVertex(v));
        }
        let map: Vec<Option<Vertex>> = (0..self.n)
            .map(|x| match x.cmp(&v) {
                std::cmp::Ordering::Less => Some(x),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(x - 1),
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| Some(Edge::new(map[e.u]?, map[e.v]?)))
            .collect();
        Ok((Self::from_sorted(self.n - 1, edges), map))
    }

    /// Contracts `e`, merging the larger end into the smaller one and
    /// simplifying parallel edges. The result has `n - 1` vertices.
    pub fn contract_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        self.require_edge(e)?;
        let (keep, gone) = e.ends();
        let relabel = |x: Vertex| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .filter(|&&f| f != e)
            .map(|f| Edge::new(relabel(f.u), relabel(f.v)))
            .collect();
        Ok(Self::from_edges_merging(self.n - 1, edges))
    }

    /// The subgraph induced by `vs`, relabelled to `0..vs.len()` in the
    /// order given. Also returns the new-to-old id map.
    pub fn induced_subgraph(&self, vs: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| pos[e.u] != usize::MAX && pos[e.v] != usize::MAX)
            .map(|e| Edge::new(pos[e.u], pos[e.v]))
            .collect();
        (Self::from_edges_merging(vs.len(), edges), vs.to_vec())
    }

    /// Spanning subgraph keeping only the listed edges.
    pub fn spanning_subgraph(&self, keep: &[Edge]) -> Graph {
        Self::from_edges_merging(self.n, keep.to_vec())
    }

    /// Disjoint union; the second graph's vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge::new(e.u + shift, e.v + shift)));
        Self::from_sorted(self.n + other.n, {
            edges.sort_unstable();
            edges
        })
    }

    /// Identifies clique `c2` of `other` with clique `c1` of `self`
    /// (`c2[i]` becomes `c1[i]`). Vertices of `other` outside the clique
    /// are appended after `self`'s vertices in increasing id order.
    pub fn glue_cliques(
        &self,
        other: &Graph,
        c1: &[Vertex],
        c2: &[Vertex],
    ) -> Result<Graph, GraphError> {
        if c1.len() != c2.len() {
            return Err(GraphError::CliqueSizeMismatch(c1.len(), c2.len()));
        }
        if c1.is_empty() {
            return Err(GraphError::EmptyClique);
        }
        if !self.is_clique(c1) {
            return Err(GraphError::NotAClique(c1.to_vec()));
        }
        if !other.is_clique(c2) {
            return Err(GraphError::NotAClique(c2.to_vec()));
        }
        let mut map = vec![usize::MAX; other.n];
        for (&a, &b) in c1.iter().zip(c2) {
            map[b] = a;
        }
        let mut next = self.n;
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge::new(map[e.u], map[e.v])));
        Ok(Self::from_edges_merging(next, edges))
    }

    /// BFS distances from `src`, ignoring the edge `skip` if given.
    pub(crate) fn bfs_distances(&self, src: Vertex, skip: Option<Edge>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap_or(0);
            for &y in &self.adj[x] {
                if skip == Some(Edge::new(x, y)) || dist[y].is_some() {
                    continue;
                }
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.bfs_distances(0, None).iter().all(Option::is_some)
    }

    /// Breadth-first spanning forest from the smallest id of each component.
    pub fn bfs_spanning_forest(&self) -> Vec<Edge> {
        let mut seen = vec![false; self.n];
        let mut tree = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        tree.push(Edge::new(x, y));
                        queue.push_back(y);
                    }
                }
            }
        }
        tree.sort_unstable();
        tree
    }

    pub fn to_edge_pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.edges.iter().map(|e| e.ends()).collect()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}

/// Convenience constructor for tests and generators that know their input is valid.
pub(crate) fn graph_unchecked(n: usize, pairs: &[(usize, usize)]) -> Graph {
    Graph::from_edges_merging(n, pairs.iter().map(|&p| Edge::from(p)).collect())
}
