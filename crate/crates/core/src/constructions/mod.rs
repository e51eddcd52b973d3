//! Graph families: theta graphs, triangle-gluing closures, clique-sums,
//! joins with complete graphs, the fixed figure graphs, and small
//! exhaustive or seeded-random corpora.

mod named;

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{canonical_key_with_limit, graph_unchecked, CanonicalKey, Edge, Graph, GraphError, Vertex};

pub use named::NamedGraph;

/// Canonical forms used for de-duplication go up to this many vertices.
pub const FAMILY_CANON_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("a theta graph needs at least two paths")]
    TooFewPaths,
    #[error("path lengths must be positive")]
    ZeroLength,
    #[error("at most one path may have length 1")]
    TwoUnitLengths,
    #[error("the two shortest paths must have total length at least 3")]
    TooShort,
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("bad graph spec {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Path lengths `a_1 ≤ … ≤ a_k` of a theta graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaSpec(Vec<usize>);

impl ThetaSpec {
    pub fn new(mut lengths: Vec<usize>) -> Result<Self, ConstructionError> {
        lengths.sort_unstable();
        match lengths.as_slice() {
            [] | [_] => Err(ConstructionError::TooFewPaths),
            [0, ..] => Err(ConstructionError::ZeroLength),
            [1, 1, ..] => Err(ConstructionError::TwoUnitLengths),
            [a, b, ..] if a + b < 3 => Err(ConstructionError::TooShort),
            _ => Ok(ThetaSpec(lengths)),
        }
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    /// Whether `a_1 + a_i` is odd for every `i ≥ 2`.
    pub fn all_odd_with_shortest(&self) -> bool {
        self.0[1..].iter().all(|a| (self.0[0] + a) % 2 == 1)
    }
}

/// Hubs are 0 and 1; each path's interior takes the next consecutive ids.
pub fn theta(spec: &ThetaSpec) -> Graph {
    let mut pairs = Vec::new();
    let mut next = 2;
    for &a in spec.lengths() {
        let mut prev = 0;
        for _ in 1..a {
            pairs.push((prev, next));
            prev = next;
            next += 1;
        }
        pairs.push((prev, 1));
    }
    graph_unchecked(next, &pairs)
}

pub fn cycle(n: usize) -> Result<Graph, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::BadSpec(format!("C{n}")));
    }
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(graph_unchecked(n, &pairs))
}

pub fn complete(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    graph_unchecked(n, &pairs)
}

/// The path on `n` vertices.
pub fn path(n: usize) -> Graph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    graph_unchecked(n, &pairs)
}

pub fn edgeless(n: usize) -> Graph {
    Graph::empty(n)
}

/// `K_1 ∨ \bar K_k`, centre last.
pub fn star(k: usize) -> Graph {
    join_complete(&edgeless(k), 1)
}

/// `K_1 ∨ C_k`, hub last.
pub fn wheel(k: usize) -> Result<Graph, ConstructionError> {
    Ok(join_complete(&cycle(k)?, 1))
}

/// `K_p ∨ G`: `p` new mutually adjacent vertices `n..n+p`, each joined
/// to every vertex of `G`.
pub fn join_complete(g: &Graph, p: usize) -> Graph {
    let n = g.n();
    let mut pairs = g.to_edge_pairs();
    for a in n..n + p {
        pairs.extend((0..a).map(|b| (b, a)));
    }
    graph_unchecked(n + p, &pairs)
}

/// Glues a triangle onto `e`: one new vertex adjacent to both ends.
pub fn phi_expand(q: &Graph, e: Edge) -> Result<Graph, ConstructionError> {
    if q.edge_index(e).is_none() {
        return Err(GraphError::AbsentEdge(e).into());
    }
    let mut pairs = q.to_edge_pairs();
    pairs.push((e.u(), q.n()));
    pairs.push((e.v(), q.n()));
    Ok(graph_unchecked(q.n() + 1, &pairs))
}

fn family_key(g: &Graph) -> Result<CanonicalKey, ConstructionError> {
    Ok(canonical_key_with_limit(g, FAMILY_CANON_LIMIT)?)
}

/// Members of `Φ(Q)` reachable by at most `depth` expansions, one per
/// isomorphism class, in breadth-first order (so `Q` comes first).
pub fn phi_family(q: &Graph, depth: usize) -> Result<Vec<Graph>, ConstructionError> {
    Ok(phi_layers(q, depth)?.into_iter().flatten().map(|(g, _)| g).collect())
}

type Layer = Vec<(Graph, Vec<Edge>)>;

fn phi_layers(q: &Graph, depth: usize) -> Result<Vec<Layer>, ConstructionError> {
    let mut seen = HashMap::from([(family_key(q)?, ())]);
    let mut layers = vec![vec![(q.clone(), Vec::new())]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (g, route) in layers.last().into_iter().flatten() {
            for &e in g.edges() {
                let h = phi_expand(g, e)?;
                if seen.insert(family_key(&h)?, ()).is_none() {
                    let mut r = route.clone();
                    r.push(e);
                    next.push((h, r));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    Ok(layers)
}

/// A sequence of edges whose successive expansions turn `Q` into a graph
/// isomorphic to `target`.
pub fn phi_route(q: &Graph, target: &Graph) -> Result<Option<Vec<Edge>>, ConstructionError> {
    if target.n() < q.n() {
        return Ok(None);
    }
    let want = family_key(target)?;
    let layers = phi_layers(q, target.n() - q.n())?;
    let hit = layers
        .get(target.n() - q.n())
        .into_iter()
        .flatten()
        .find_map(|(g, route)| (family_key(g).ok()? == want).then(|| route.clone()));
    Ok(hit)
}

/// `𝒢(G_1 ∪_k G_2)`: clique `c2` of `g2` is identified with clique `c1` of `g1`.
pub fn clique_sum(g1: &Graph, g2: &Graph, c1: &[Vertex], c2: &[Vertex]) -> Result<Graph, ConstructionError> {
    Ok(g1.glue_cliques(g2, c1, c2)?)
}

/// Every connected graph on exactly `n` vertices up to isomorphism, from
/// edge subsets of `K_n`. Sorted by edge count, then canonical form.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let all: Vec<Edge> = complete(n).edges().to_vec();
    let mut classes: BTreeMap<(usize, CanonicalKey), Graph> = BTreeMap::new();
    for mask in 0u64..(1u64 << all.len()) {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let pairs: Vec<_> = all
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| e.ends())
            .collect();
        let g = graph_unchecked(n, &pairs);
        if !g.is_connected() {
            continue;
        }
        if let Ok(key) = canonical_key_with_limit(&g, FAMILY_CANON_LIMIT) {
            classes.entry((g.m(), key)).or_insert(g);
        }
    }
    classes.into_values().collect()
}

/// A connected chordal graph built by adding each vertex onto a random
/// clique of the graph so far; cyclomatic number at most `max_cyclomatic`.
pub fn random_chordal(rng: &mut ChaCha8Rng, n: usize, max_cyclomatic: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 1..n {
        let w = rng.random_range(0..v);
        let mut clique = vec![w];
        let mut cand = adj[w].clone();
        cand.shuffle(rng);
        let spare = max_cyclomatic - (pairs.len() + 1 - v);
        for c in cand {
            if clique.len() > spare || !rng.random_bool(0.6) {
                break;
            }
            if clique.iter().all(|&x| adj[x].contains(&c)) {
                clique.push(c);
            }
        }
        for &x in &clique {
            pairs.push((x, v));
            adj[x].push(v);
            adj[v].push(x);
        }
    }
    graph_unchecked(n, &pairs)
}

/// A seeded generator for reproducible corpora.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parses generator strings: `C5`, `K4`, `P4` (path on 4 vertices), `E3`
/// (edgeless), `S3` (star with 3 leaves), `W5` (wheel on a 5-cycle),
/// `theta:1,2,2`, and the named figure graphs. `A+B` is a disjoint union.
pub fn parse_graph_spec(spec: &str) -> Result<Graph, ConstructionError> {
    let s = spec.trim();
    if let Some((a, b)) = s.split_once('+') {
        return Ok(parse_graph_spec(a)?.disjoint_union(&parse_graph_spec(b)?));
    }
    if let Ok(named) = NamedGraph::from_str(s) {
        return Ok(named.graph());
    }
    let bad = || ConstructionError::BadSpec(s.to_string());
    if let Some(rest) = s.strip_prefix("theta:") {
        let lengths = rest
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(theta(&ThetaSpec::new(lengths)?));
    }
    let mut chars = s.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let k: usize = chars.as_str().parse().map_err(|_| bad())?;
    match kind {
        'C' => cycle(k),
        'K' => Ok(complete(k)),
        'P' => Ok(path(k)),
        'E' => Ok(edgeless(k)),
        'S' => Ok(star(k)),
        'W' => wheel(k),
        _ => Err(bad()),
    }
}
