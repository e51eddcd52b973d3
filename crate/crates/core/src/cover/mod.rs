//! The m-fold cover model of DP-coloring.
//!
//! Every fibre is `L(v) = {(v,0), …, (v,m-1)}` and is implicitly a clique,
//! so a cover is determined by one partial injection per edge. For an edge
//! `u-v` with `u < v` the matching sends an index `i` of `L(u)` to the
//! index `σ(i)` of `L(v)`; a transversal picking `a` at `u` and `b` at `v`
//! is blocked exactly when `σ(a) = b`.

mod count;
pub mod perm;
mod search;

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, Vertex};
use perm::Permutation;

pub use count::{count_transversals, count_transversals_ie, count_transversals_ie_with_limit, DEFAULT_IE_EDGE_LIMIT};
pub use search::{
    dp_chromatic_number, dp_color_function, dp_color_function_product, dp_color_function_with,
    DpResult, SearchOptions, DEFAULT_BUDGET, DEFAULT_MAX_WITNESSES,
};

/// Fibre sizes are bounded by the width of the bit masks used in counting.
pub const MAX_FOLD: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("fold size {0} outside 1..={MAX_FOLD}")]
    BadFold(usize),
    #[error("cover has {got} matchings for a graph with {want} edges")]
    MatchingCount { got: usize, want: usize },
    #[error("matching on {edge} is invalid: {reason}")]
    InvalidMatching { edge: Edge, reason: String },
    #[error("pair ({i},{j}) is not in the matching of {edge}")]
    AbsentPair { edge: Edge, i: usize, j: usize },
    #[error("partial transversal is not independent on edge {0}")]
    DependentPartial(Edge),
    #[error("partial transversal picks an index outside 0..{m} at vertex {vertex}")]
    PartialIndex { vertex: usize, m: usize },
    #[error("partial transversal has length {got}, expected {want}")]
    PartialLength { got: usize, want: usize },
    #[error("inclusion-exclusion limited to {limit} edges, graph has {m}")]
    EdgeLimit { m: usize, limit: usize },
    #[error("search needs about {required} steps, budget is {budget}; P_DP is at most {upper_bound}")]
    BudgetExceeded {
        required: u128,
        budget: u128,
        upper_bound: BigUint,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("bad cover JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A partial injection `[m] → [m]`, oriented from the lower-id endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    forward: Vec<Option<usize>>,
}

impl Matching {
    pub fn identity(m: usize) -> Self {
        Matching {
            forward: (0..m).map(Some).collect(),
        }
    }

    pub fn empty(m: usize) -> Self {
        Matching {
            forward: vec![None; m],
        }
    }

    pub fn from_permutation(p: &[usize]) -> Self {
        Matching {
            forward: p.iter().copied().map(Some).collect(),
        }
    }

    /// Pairs `(i, j)` meaning low-end index `i` is joined to high-end index `j`.
    pub fn from_pairs(m: usize, pairs: &[(usize, usize)]) -> Result<Self, String> {
        let mut forward = vec![None; m];
        let mut hit = vec![false; m];
        for &(i, j) in pairs {
            if i >= m || j >= m {
                return Err(format!("pair ({i},{j}) out of range for m={m}"));
            }
            if forward[i].is_some() || hit[j] {
                return Err(format!("pair ({i},{j}) breaks injectivity"));
            }
            forward[i] = Some(j);
            hit[j] = true;
        }
        Ok(Matching { forward })
    }

    pub fn fold(&self) -> usize {
        self.forward.len()
    }

    pub fn image(&self, i: usize) -> Option<usize> {
        self.forward.get(i).copied().flatten()
    }

    pub fn preimage(&self, j: usize) -> Option<usize> {
        self.forward.iter().position(|&x| x == Some(j))
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.forward
            .iter()
            .enumerate()
            .filter_map(|(i, j)| Some((i, (*j)?)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.forward.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.forward.iter().all(Option::is_some)
    }

    /// The permutation, when the matching is full.
    pub fn as_permutation(&self) -> Option<Permutation> {
        self.forward.iter().copied().collect()
    }

    /// The non-identity pairs, i.e. the twist set of this edge.
    pub fn twists(&self) -> Vec<(usize, usize)> {
        self.pairs().into_iter().filter(|(i, j)| i != j).collect()
    }

    fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.forward.len()];
        self.forward
            .iter()
            .flatten()
            .all(|&j| j < hit.len() && !std::mem::replace(&mut hit[j], true))
    }
}

/// An m-fold cover of a graph. `matchings[k]` belongs to `graph.edges()[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    graph: Graph,
    m: usize,
    matchings: Vec<Matching>,
}

impl Cover {
    pub fn new(graph: Graph, m: usize, matchings: Vec<Matching>) -> Result<Self, CoverError> {
        if m == 0 || m > MAX_FOLD {
            return Err(CoverError::BadFold(m));
        }
        if matchings.len() != graph.m() {
            return Err(CoverError::MatchingCount {
                got: matchings.len(),
                want: graph.m(),
            });
        }
        for (e, mt) in graph.edges().iter().zip(&matchings) {
            if mt.fold() != m || !mt.is_injective() {
                return Err(CoverError::InvalidMatching {
                    edge: *e,
                    reason: "not an injection on [m]".into(),
                });
            }
        }
        Ok(Cover { graph, m, matchings })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn fold(&self) -> usize {
        self.m
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn matching(&self, e: Edge) -> Option<&Matching> {
        self.graph.edge_index(e).map(|i| &self.matchings[i])
    }

    /// Twist set of `e`: pairs of its matching that are not of the form `(i, i)`.
    pub fn twist_set(&self, e: Edge) -> Option<Vec<(usize, usize)>> {
        self.matching(e).map(Matching::twists)
    }

    pub fn is_full(&self) -> bool {
        self.matchings.iter().all(Matching::is_full)
    }

    /// Removes one pair from the matching of `e`.
    pub fn delete_cover_edge(&self, e: Edge, i: usize, j: usize) -> Result<Cover, CoverError> {
        let idx = self
            .graph
            .edge_index(e)
            .ok_or(GraphError::AbsentEdge(e))?;
        if self.matchings[idx].image(i) != Some(j) {
            return Err(CoverError::AbsentPair { edge: e, i, j });
        }
        let mut out = self.clone();
        out.matchings[idx].forward[i] = None;
        Ok(out)
    }

    /// Whether some relabelling of each fibre turns every matching into the
    /// full identity: all matchings are full and the holonomy around every
    /// fundamental cycle of a spanning forest is trivial.
    pub fn is_h0_isomorphic(&self) -> bool {
        self.gauge_normalize()
            .is_some_and(|g| g.cotree.iter().all(|(_, p)| p.iter().enumerate().all(|(i, &j)| i == j)))
    }

    /// Relabels fibres so that the matchings on a breadth-first spanning
    /// forest become identities. Only defined for full covers.
    pub fn gauge_normalize(&self) -> Option<GaugeAssignment> {
        let perms: Vec<Permutation> = self
            .matchings
            .iter()
            .map(Matching::as_permutation)
            .collect::<Option<_>>()?;
        let g = &self.graph;
        let tree = g.bfs_spanning_forest();
        let mut relabel: Vec<Option<Permutation>> = vec![None; g.n()];
        for root in 0..g.n() {
            if relabel[root].is_some() {
                continue;
            }
            relabel[root] = Some(perm::identity(self.m));
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in g.neighbors(x) {
                    let e = Edge::new(x, y);
                    if relabel[y].is_some() || tree.binary_search(&e).is_err() {
                        continue;
                    }
                    let sigma = &perms[g.edge_index(e)?];
                    let px = relabel[x].as_ref()?;
                    // keep the tree matching equal to the identity after relabelling
                    let py: Permutation = if x < y {
                        let inv = perm::inverse(sigma);
                        inv.iter().map(|&k| px[k]).collect()
                    } else {
                        sigma.iter().map(|&k| px[k]).collect()
                    };
                    relabel[y] = Some(py);
                    queue.push_back(y);
                }
            }
        }
        let relabel: Vec<Permutation> = relabel.into_iter().collect::<Option<_>>()?;
        let cotree = g
            .edges()
            .iter()
            .zip(&perms)
            .filter(|(e, _)| tree.binary_search(e).is_err())
            .map(|(e, sigma)| {
                let (pu, pv) = (&relabel[e.u()], &relabel[e.v()]);
                let inv_u = perm::inverse(pu);
                let normalized: Permutation = (0..self.m).map(|i| pv[sigma[inv_u[i]]]).collect();
                (*e, normalized)
            })
            .collect();
        Some(GaugeAssignment {
            m: self.m,
            tree,
            cotree,
        })
    }

    /// Some full transversal containing the fixed choices of `partial`, or
    /// `None` when no extension exists.
    pub fn extend_partial(&self, partial: &[Option<usize>]) -> Result<Option<Vec<usize>>, CoverError> {
        count::extend_partial(self, partial)
    }

    pub fn to_json(&self) -> CoverJson {
        CoverJson {
            m: self.m,
            matchings: self
                .graph
                .edges()
                .iter()
                .zip(&self.matchings)
                .map(|(e, mt)| {
                    let pairs = mt.pairs().into_iter().map(|(i, j)| [i + 1, j + 1]).collect();
                    (e.key(), pairs)
                })
                .collect(),
        }
    }

    /// Edges missing from the JSON get an empty matching. A key written
    /// high-low has its pairs read in that orientation.
    pub fn from_json(graph: Graph, json: &CoverJson) -> Result<Cover, CoverError> {
        let m = json.m;
        if m == 0 || m > MAX_FOLD {
            return Err(CoverError::BadFold(m));
        }
        let mut matchings = vec![Matching::empty(m); graph.m()];
        for (key, pairs) in &json.matchings {
            let e = Edge::parse_key(key)?;
            let idx = graph.edge_index(e).ok_or(GraphError::AbsentEdge(e))?;
            let flipped = key.trim_start().split('-').next().and_then(|s| s.trim().parse().ok()) != Some(e.u());
            let mut zero_based = Vec::with_capacity(pairs.len());
            for &[a, b] in pairs {
                if a == 0 || b == 0 {
                    return Err(CoverError::Json(format!("{key}: fibre indices are 1-based")));
                }
                zero_based.push(if flipped { (b - 1, a - 1) } else { (a - 1, b - 1) });
            }
            matchings[idx] = Matching::from_pairs(m, &zero_based)
                .map_err(|reason| CoverError::InvalidMatching { edge: e, reason })?;
        }
        Cover::new(graph, m, matchings)
    }
}

/// `H_0(G, m)`: the identity matching on every edge.
pub fn h0_cover(g: &Graph, m: usize) -> Result<Cover, CoverError> {
    Cover::new(g.clone(), m, vec![Matching::identity(m); g.m()])
}

/// Serialized cover: `{"m": 3, "matchings": {"0-1": [[1,1],[2,3]], ...}}`
/// with 1-based fibre indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub m: usize,
    pub matchings: BTreeMap<String, Vec<[usize; 2]>>,
}

/// A full cover in spanning-tree gauge: identity matchings on `tree`, one
/// permutation per co-tree edge (0-based internally).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaugeAssignment {
    pub m: usize,
    pub tree: Vec<Edge>,
    pub cotree: Vec<(Edge, Permutation)>,
}

impl GaugeAssignment {
    pub fn to_cover(&self, g: &Graph) -> Result<Cover, CoverError> {
        let mut matchings = vec![Matching::identity(self.m); g.m()];
        for (e, p) in &self.cotree {
            if p.len() != self.m || !perm::is_permutation(p) {
                return Err(CoverError::InvalidMatching {
                    edge: *e,
                    reason: "not a permutation".into(),
                });
            }
            let idx = g.edge_index(*e).ok_or(GraphError::AbsentEdge(*e))?;
            matchings[idx] = Matching::from_permutation(p);
        }
        Cover::new(g.clone(), self.m, matchings)
    }

    pub fn is_identity(&self) -> bool {
        self.cotree
            .iter()
            .all(|(_, p)| p.iter().enumerate().all(|(i, &j)| i == j))
    }

    pub fn to_json(&self) -> GaugeJson {
        GaugeJson {
            m: self.m,
            tree: self.tree.clone(),
            cotree: self
                .cotree
                .iter()
                .map(|(e, p)| (e.key(), p.iter().map(|&j| j + 1).collect()))
                .collect(),
        }
    }

    pub fn from_json(json: &GaugeJson) -> Result<Self, CoverError> {
        let mut cotree = Vec::new();
        for (key, p) in &json.cotree {
            let e = Edge::parse_key(key)?;
            if p.contains(&0) {
                return Err(CoverError::Json(format!("{key}: permutation is 1-based")));
            }
            cotree.push((e, p.iter().map(|&j| j - 1).collect()));
        }
        cotree.sort();
        Ok(GaugeAssignment {
            m: json.m,
            tree: json.tree.clone(),
            cotree,
        })
    }
}

/// `{"m": 3, "tree": [[0,1],...], "cotree": {"0-3": [2,1,3]}}`, permutations
/// in 1-based one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeJson {
    pub m: usize,
    pub tree: Vec<Edge>,
    pub cotree: BTreeMap<String, Vec<usize>>,
}

/// Choice of one fibre index per vertex.
pub type Transversal = Vec<usize>;

/// Whether `choice` picks an independent set of the cover graph.
pub fn is_transversal(cover: &Cover, choice: &[usize]) -> bool {
    choice.len() == cover.graph.n()
        && choice.iter().all(|&c| c < cover.m)
        && cover
            .graph
            .edges()
            .iter()
            .zip(&cover.matchings)
            .all(|(e, mt)| mt.image(choice[e.u()]) != Some(choice[e.v()]))
}

pub(crate) fn vertex_order(g: &Graph) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}
