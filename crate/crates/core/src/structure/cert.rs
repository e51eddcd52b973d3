//! Spanning-tree certificates: a tree `T` such that every co-tree edge `e`
//! has odd `ℓ(e)` and lies on a cycle of length `ℓ(e)` whose off-tree edges
//! (other than `e`) all have strictly smaller `ℓ`. The stricter variant
//! demands that the cycle be the fundamental cycle of `e` with respect to `T`.

use std::collections::{BTreeMap, VecDeque};
use std::ops::ControlFlow;

use num_bigint::BigInt;
use serde::Serialize;

use super::{edge_ells, Ell, StructureError};
use crate::exec::Exec;
use crate::graph::{spanning_tree_count, Edge, Graph, GraphError, Vertex};

const BATCH: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    Gt,
    Gt0,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCertificate {
    pub tree: Vec<Edge>,
    /// For each co-tree edge `u-v`, a path `u … v` in `G - e`; closing it
    /// with `e` gives the witness cycle.
    pub witnesses: BTreeMap<Edge, Vec<Vertex>>,
    pub kind: CertKind,
    /// `ℓ(G, T)`: the largest `ℓ` over co-tree edges.
    pub ell_gt: Ell,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub tree: Vec<Edge>,
    pub witnesses: BTreeMap<String, Vec<Vertex>>,
    pub kind: CertKind,
    pub ell_gt: Ell,
}

impl TreeCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            tree: self.tree.clone(),
            witnesses: self.witnesses.iter().map(|(e, c)| (e.key(), c.clone())).collect(),
            kind: self.kind,
            ell_gt: self.ell_gt,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateOutcome {
    Found { cert: TreeCertificate, trees_checked: u64 },
    /// Every spanning tree was examined.
    NoneDefinitive { trees_checked: u64 },
    /// The tree cap stopped the search first.
    Inconclusive { trees_checked: u64, total_trees: BigInt },
}

impl CertificateOutcome {
    pub fn certificate(&self) -> Option<&TreeCertificate> {
        match self {
            CertificateOutcome::Found { cert, .. } => Some(cert),
            _ => None,
        }
    }
}

pub fn gt_certificate(g: &Graph, tree_cap: usize) -> Result<CertificateOutcome, StructureError> {
    gt_certificate_with(g, CertKind::Gt, tree_cap, Exec::default())
}

pub fn gt0_certificate(g: &Graph, tree_cap: usize) -> Result<CertificateOutcome, StructureError> {
    gt_certificate_with(g, CertKind::Gt0, tree_cap, Exec::default())
}

type Distances = Vec<Option<usize>>;

struct Checker<'g> {
    g: &'g Graph,
    kind: CertKind,
    ells: Vec<Ell>,
    /// Distances from both ends of each edge in `G - e`.
    dists: Vec<Option<(Distances, Distances)>>,
}

impl<'g> Checker<'g> {
    fn new(g: &'g Graph, kind: CertKind) -> Self {
        let ells = edge_ells(g);
        let dists = g
            .edges()
            .iter()
            .zip(&ells)
            .map(|(&e, l)| {
                (kind == CertKind::Gt && l.is_odd())
                    .then(|| (g.bfs_distances(e.u(), Some(e)), g.bfs_distances(e.v(), Some(e))))
            })
            .collect();
        Checker { g, kind, ells, dists }
    }

    fn check(&self, tree: &[Edge]) -> Option<TreeCertificate> {
        let in_tree = |e: &Edge| tree.binary_search(e).is_ok();
        let mut tree_adj = vec![Vec::new(); self.g.n()];
        for e in tree {
            tree_adj[e.u()].push(e.v());
            tree_adj[e.v()].push(e.u());
        }
        let mut witnesses = BTreeMap::new();
        let mut ell_gt = None;
        for (k, e) in self.g.edges().iter().enumerate() {
            if in_tree(e) {
                continue;
            }
            let l = self.ells[k].finite().filter(|l| l % 2 == 1)?;
            let path = match self.kind {
                CertKind::Gt0 => Some(tree_path(&tree_adj, e.u(), e.v())).filter(|p| p.len() == l),
                CertKind::Gt => self.shortest_path_witness(k, l, &in_tree),
            }?;
            witnesses.insert(*e, path);
            ell_gt = ell_gt.max(Some(l));
        }
        Some(TreeCertificate {
            tree: tree.to_vec(),
            witnesses,
            kind: self.kind,
            ell_gt: ell_gt.map_or(Ell::Infinite, Ell::Finite),
        })
    }

    /// Lexicographically first `u … v` path of length `l - 1` in `G - e`
    /// whose off-tree edges all have `ℓ < l`.
    fn shortest_path_witness(&self, k: usize, l: usize, in_tree: &dyn Fn(&Edge) -> bool) -> Option<Vec<Vertex>> {
        let e = self.g.edges()[k];
        let (du, dv) = self.dists[k].as_ref()?;
        let allowed = |f: Edge| {
            in_tree(&f) || self.g.edge_index(f).is_some_and(|i| self.ells[i] < Ell::Finite(l))
        };
        let mut path = vec![e.u()];
        self.extend(&mut path, e, l - 1, du, dv, &allowed).then_some(path)
    }

    fn extend(
        &self,
        path: &mut Vec<Vertex>,
        e: Edge,
        len: usize,
        du: &[Option<usize>],
        dv: &[Option<usize>],
        allowed: &dyn Fn(Edge) -> bool,
    ) -> bool {
        let x = *path.last().unwrap_or(&e.u());
        let d = path.len() - 1;
        if d == len {
            return x == e.v();
        }
        for &y in self.g.neighbors(x) {
            let f = Edge::new(x, y);
            if f == e || du[y] != Some(d + 1) || dv[y] != Some(len - d - 1) || !allowed(f) {
                continue;
            }
            path.push(y);
            if self.extend(path, e, len, du, dv, allowed) {
                return true;
            }
            path.pop();
        }
        false
    }
}

fn tree_path(adj: &[Vec<Vertex>], from: Vertex, to: Vertex) -> Vec<Vertex> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    while *path.last().unwrap_or(&from) != from {
        let p = parent[*path.last().unwrap_or(&from)];
        if p == usize::MAX {
            return Vec::new();
        }
        path.push(p);
    }
    path.reverse();
    path
}

/// Searches spanning trees in lexicographic order and returns the first
/// one carrying a certificate of the given kind. Batches of trees are
/// checked with `exec`; the earliest success in a batch wins.
pub fn gt_certificate_with(
    g: &Graph,
    kind: CertKind,
    tree_cap: usize,
    exec: Exec,
) -> Result<CertificateOutcome, StructureError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let checker = Checker::new(g, kind);
    let mut batch: Vec<Vec<Edge>> = Vec::with_capacity(BATCH);
    let mut checked = 0u64;
    let mut found = None;
    let mut capped = false;
    let flush = |batch: &mut Vec<Vec<Edge>>, checked: &mut u64| -> Option<(TreeCertificate, u64)> {
        let results = exec.map_slice(batch, |t| checker.check(t));
        let hit = results.into_iter().enumerate().find_map(|(i, c)| Some((c?, i)));
        let out = hit.map(|(c, i)| (c, *checked + i as u64 + 1));
        *checked += batch.len() as u64;
        batch.clear();
        out
    };
    let _ = g.for_each_spanning_tree(|t| {
        if checked as usize + batch.len() == tree_cap {
            capped = true;
            return ControlFlow::Break(());
        }
        batch.push(t.to_vec());
        if batch.len() == BATCH {
            if let Some(hit) = flush(&mut batch, &mut checked) {
                found = Some(hit);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    if found.is_none() && !batch.is_empty() {
        found = flush(&mut batch, &mut checked);
    }
    if let Some((cert, trees_checked)) = found {
        return Ok(CertificateOutcome::Found { cert, trees_checked });
    }
    let total_trees = spanning_tree_count(g);
    if !capped && BigInt::from(checked) == total_trees {
        Ok(CertificateOutcome::NoneDefinitive { trees_checked: checked })
    } else {
        Ok(CertificateOutcome::Inconclusive {
            trees_checked: checked,
            total_trees,
        })
    }
}

fn invalid(msg: impl Into<String>) -> StructureError {
    StructureError::InvalidCertificate(msg.into())
}

/// Re-checks a certificate against `g` from scratch.
pub fn validate_certificate(g: &Graph, cert: &TreeCertificate) -> Result<(), StructureError> {
    let mut tree = cert.tree.clone();
    tree.sort_unstable();
    tree.dedup();
    if tree.len() != cert.tree.len() || tree.len() + 1 != g.n().max(1) {
        return Err(invalid("tree has the wrong number of edges"));
    }
    if let Some(e) = tree.iter().find(|e| g.edge_index(**e).is_none()) {
        return Err(invalid(format!("tree edge {e} is not in the graph")));
    }
    if !g.spanning_subgraph(&tree).is_connected() {
        return Err(invalid("tree does not span the graph"));
    }
    let ells = edge_ells(g);
    let ell_of = |f: Edge| g.edge_index(f).map(|i| ells[i]);
    let cotree: Vec<Edge> = g.edges().iter().copied().filter(|e| tree.binary_search(e).is_err()).collect();
    if !cotree.iter().copied().eq(cert.witnesses.keys().copied()) {
        return Err(invalid("witnesses do not match the co-tree edges"));
    }
    let mut ell_gt = None;
    for (e, path) in &cert.witnesses {
        let l = ell_of(*e).and_then(Ell::finite).unwrap_or(0);
        if l % 2 == 0 {
            return Err(invalid(format!("{e} has ℓ = {l}, not odd")));
        }
        if path.len() != l || path.first() != Some(&e.u()) || path.last() != Some(&e.v()) {
            return Err(invalid(format!("witness for {e} is not a {l}-cycle through it")));
        }
        let mut seen = path.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != path.len() {
            return Err(invalid(format!("witness for {e} repeats a vertex")));
        }
        for w in path.windows(2) {
            let f = Edge::new(w[0], w[1]);
            let Some(lf) = ell_of(f).filter(|_| f != *e) else {
                return Err(invalid(format!("witness for {e} uses a non-edge {f}")));
            };
            let on_tree = tree.binary_search(&f).is_ok();
            let ok = match cert.kind {
                CertKind::Gt0 => on_tree,
                CertKind::Gt => on_tree || lf < Ell::Finite(l),
            };
            if !ok {
                return Err(invalid(format!("witness for {e} uses forbidden edge {f}")));
            }
        }
        ell_gt = ell_gt.max(Some(l));
    }
    if cert.ell_gt != ell_gt.map_or(Ell::Infinite, Ell::Finite) {
        return Err(invalid("ℓ(G,T) does not match the witnesses"));
    }
    Ok(())
}

/// Every non-bridge tree edge has odd `ℓ` at most `ℓ(G, T)`.
pub fn tree_edge_audit(g: &Graph, cert: &TreeCertificate) -> Result<bool, StructureError> {
    validate_certificate(g, cert)?;
    let ells = edge_ells(g);
    Ok(cert.tree.iter().all(|&f| {
        let l = g.edge_index(f).map_or(Ell::Infinite, |i| ells[i]);
        l == Ell::Infinite || (l.is_odd() && l <= cert.ell_gt)
    }))
}
