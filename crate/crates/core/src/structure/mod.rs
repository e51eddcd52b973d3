//! Edge girth `ℓ(e)`, shortest-cycle counts, and the structural tests
//! built on them.

mod cert;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, Vertex};
use crate::poly::{chromatic_polynomial, Polynomial};

pub use cert::{
    gt0_certificate, gt_certificate, gt_certificate_with, tree_edge_audit, validate_certificate, CertKind,
    CertificateJson, CertificateOutcome, TreeCertificate,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("fold size must be at least 2, got {0}")]
    FoldTooSmall(usize),
    #[error("edge {0} is a bridge")]
    Bridge(Edge),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Length of a shortest cycle through an edge; bridges lie on none.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ell {
    Finite(usize),
    Infinite,
}

impl Ell {
    pub fn finite(self) -> Option<usize> {
        match self {
            Ell::Finite(l) => Some(l),
            Ell::Infinite => None,
        }
    }

    pub fn is_odd(self) -> bool {
        self.finite().is_some_and(|l| l % 2 == 1)
    }

    pub fn is_even(self) -> bool {
        self.finite().is_some_and(|l| l % 2 == 0)
    }
}

impl fmt::Display for Ell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ell::Finite(l) => write!(f, "{l}"),
            Ell::Infinite => f.write_str("infinity"),
        }
    }
}

/// A number, or the string `"infinity"`.
impl Serialize for Ell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Ell::Finite(l) => s.serialize_u64(*l as u64),
            Ell::Infinite => s.serialize_str("infinity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeProfile {
    pub edge: Edge,
    pub ell: Ell,
    pub is_bridge: bool,
    /// `|𝒞(e)|`, the number of shortest cycles through the edge.
    pub shortest_cycle_count: BigUint,
}

/// Distances from `src` in `G - skip` with the number of shortest paths.
pub(crate) fn path_counts(g: &Graph, src: Vertex, skip: Option<Edge>) -> (Vec<Option<usize>>, Vec<BigUint>) {
    let mut dist = vec![None; g.n()];
    let mut count = vec![BigUint::zero(); g.n()];
    dist[src] = Some(0);
    count[src] = BigUint::one();
    let mut queue = VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].unwrap_or_default();
        for &y in g.neighbors(x) {
            if Some(Edge::new(x, y)) == skip {
                continue;
            }
            match dist[y] {
                None => {
                    dist[y] = Some(dx + 1);
                    count[y] = count[x].clone();
                    queue.push_back(y);
                }
                Some(dy) if dy == dx + 1 => {
                    let c = count[x].clone();
                    count[y] += c;
                }
                Some(_) => {}
            }
        }
    }
    (dist, count)
}

pub fn edge_profile(g: &Graph, e: Edge) -> Result<EdgeProfile, GraphError> {
    if g.edge_index(e).is_none() {
        return Err(GraphError::AbsentEdge(e));
    }
    let (dist, count) = path_counts(g, e.u(), Some(e));
    Ok(match dist[e.v()] {
        Some(d) => EdgeProfile {
            edge: e,
            ell: Ell::Finite(d + 1),
            is_bridge: false,
            shortest_cycle_count: count[e.v()].clone(),
        },
        None => EdgeProfile {
            edge: e,
            ell: Ell::Infinite,
            is_bridge: true,
            shortest_cycle_count: BigUint::zero(),
        },
    })
}

/// `ℓ(e)` for every edge, in edge-index order.
pub fn edge_ells(g: &Graph) -> Vec<Ell> {
    g.edges()
        .iter()
        .map(|&e| match g.bfs_distances(e.u(), Some(e))[e.v()] {
            Some(d) => Ell::Finite(d + 1),
            None => Ell::Infinite,
        })
        .collect()
}

pub fn girth(g: &Graph) -> Ell {
    edge_ells(g).into_iter().min().unwrap_or(Ell::Infinite)
}

/// The first edge, in index order, with finite even `ℓ(e)`.
pub fn even_ell_witness(g: &Graph) -> Option<Edge> {
    g.edges()
        .iter()
        .zip(edge_ells(g))
        .find(|(_, l)| l.is_even())
        .map(|(e, _)| *e)
}

/// Exact test of `(m-1) P(G-e, m) < m P(G, m)`.
pub fn kaul_mudrock_gap(g: &Graph, e: Edge, m: usize) -> Result<bool, StructureError> {
    if m < 2 {
        return Err(StructureError::FoldTooSmall(m));
    }
    let minus = g.delete_edge(e)?;
    let m_int = BigInt::from(m);
    let lhs = (&m_int - 1) * chromatic_polynomial(&minus).eval(&m_int);
    let rhs = &m_int * chromatic_polynomial(g).eval(&m_int);
    Ok(lhs < rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    /// `x P(G/e, x) - P(G-e, x)`.
    pub difference: Polynomial,
    pub expected_degree: usize,
    pub expected_coeff: BigInt,
    pub pass: bool,
}

/// Checks that `x P(G/e) - P(G-e)` has leading term
/// `(-1)^{ℓ-1} |𝒞(e)| x^{n-ℓ+2}`.
pub fn leading_term_check(g: &Graph, e: Edge) -> Result<LeadingTerm, StructureError> {
    let profile = edge_profile(g, e)?;
    let Ell::Finite(ell) = profile.ell else {
        return Err(StructureError::Bridge(e));
    };
    let contracted = chromatic_polynomial(&g.contract_edge(e)?);
    let deleted = chromatic_polynomial(&g.delete_edge(e)?);
    let difference = contracted.shift_up(1) - deleted;
    let expected_degree = g.n() + 2 - ell;
    let magnitude = BigInt::from(profile.shortest_cycle_count);
    let expected_coeff = if ell % 2 == 1 { magnitude } else { -magnitude };
    let pass = difference.degree() == Some(expected_degree) && difference.leading_coeff() == expected_coeff;
    Ok(LeadingTerm {
        difference,
        expected_degree,
        expected_coeff,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_unchecked;

    fn cycle(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph_unchecked(n, &pairs)
    }

    fn complete(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        graph_unchecked(n, &pairs)
    }

    #[test]
    fn profiles() {
        let k4 = complete(4);
        let p = edge_profile(&k4, Edge::new(0, 1)).unwrap();
        assert_eq!((p.ell, p.shortest_cycle_count), (Ell::Finite(3), BigUint::from(2u32)));
        let c5 = cycle(5);
        let p = edge_profile(&c5, Edge::new(0, 4)).unwrap();
        assert_eq!((p.ell, p.shortest_cycle_count), (Ell::Finite(5), BigUint::one()));
        let path = graph_unchecked(3, &[(0, 1), (1, 2)]);
        let p = edge_profile(&path, Edge::new(0, 1)).unwrap();
        assert!(p.is_bridge && p.ell == Ell::Infinite);
        assert!(edge_profile(&path, Edge::new(0, 2)).is_err());
    }

    #[test]
    fn girth_and_even_edges() {
        assert_eq!(girth(&cycle(4)), Ell::Finite(4));
        assert_eq!(girth(&graph_unchecked(3, &[(0, 1), (1, 2)])), Ell::Infinite);
        assert_eq!(even_ell_witness(&cycle(4)), Some(Edge::new(0, 1)));
        assert_eq!(even_ell_witness(&complete(4)), None);
        assert!(Ell::Finite(100) < Ell::Infinite);
    }

    #[test]
    fn gap_examples() {
        let e = Edge::new(0, 1);
        assert!(kaul_mudrock_gap(&cycle(4), e, 2).unwrap());
        assert!(!kaul_mudrock_gap(&cycle(3), e, 3).unwrap());
        assert!(!kaul_mudrock_gap(&complete(2), e, 2).unwrap());
        assert_eq!(kaul_mudrock_gap(&cycle(3), e, 1), Err(StructureError::FoldTooSmall(1)));
    }

    #[test]
    fn leading_terms() {
        let e = Edge::new(0, 1);
        let c4 = leading_term_check(&cycle(4), e).unwrap();
        assert_eq!(c4.difference, Polynomial::from_i64s(&[0, 1, -1]));
        assert!(c4.pass);
        let c5 = leading_term_check(&cycle(5), e).unwrap();
        assert_eq!((c5.expected_degree, c5.expected_coeff.clone()), (2, BigInt::one()));
        assert!(c5.pass);
        let k4 = leading_term_check(&complete(4), e).unwrap();
        assert_eq!((k4.expected_degree, k4.expected_coeff.clone()), (3, BigInt::from(2)));
        assert!(k4.pass);
        let path = graph_unchecked(2, &[(0, 1)]);
        assert_eq!(leading_term_check(&path, e), Err(StructureError::Bridge(e)));
    }
}
