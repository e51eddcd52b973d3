//! Chromatic polynomials: exact deletion–contraction with factorization
//! shortcuts, the subset-expansion oracle, brute-force counting, and the
//! classical identities (simplicial peel, clique gluing).

mod polynomial;

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::graph::{canonical_key, CanonicalKey, Edge, Graph, GraphError, Vertex};

pub use polynomial::Polynomial;

pub const DEFAULT_WHITNEY_EDGE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("subset expansion limited to {limit} edges, graph has {m}")]
    EdgeLimit { m: usize, limit: usize },
    #[error("vertex {0} is not simplicial")]
    NotSimplicial(Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum CacheKey {
    Canonical(CanonicalKey),
    Labeled(Graph),
}

fn cache_key(g: &Graph) -> CacheKey {
    match canonical_key(g) {
        Ok(k) => CacheKey::Canonical(k),
        Err(_) => CacheKey::Labeled(g.clone()),
    }
}

/// `P(G, x)` exactly.
pub fn chromatic_polynomial(g: &Graph) -> Polynomial {
    let mut cache = HashMap::new();
    chromatic_rec(g, &mut cache)
}

fn chromatic_rec(g: &Graph, cache: &mut HashMap<CacheKey, Polynomial>) -> Polynomial {
    let n = g.n();
    if g.m() == 0 {
        return Polynomial::x().pow(n);
    }
    let comps = g.components();
    if comps.len() > 1 {
        return comps.iter().fold(Polynomial::one(), |acc, c| {
            acc * chromatic_rec(&g.induced_subgraph(c).0, cache)
        });
    }
    if let Some(p) = closed_form(g) {
        return p;
    }
    // gluing at a cut vertex divides out one factor of x per extra block
    let blocks = g.blocks().blocks;
    if blocks.len() > 1 {
        let product = blocks.iter().fold(Polynomial::one(), |acc, b| {
            acc * chromatic_rec(&g.block_subgraph(b), cache)
        });
        return product
            .div_x_pow(blocks.len() - 1)
            .expect("block polynomials are divisible by x");
    }
    let key = cache_key(g);
    if let Some(p) = cache.get(&key) {
        return p.clone();
    }
    let e = pick_edge(g);
    let del = g.delete_edge(e).expect("edge taken from graph");
    let con = g.contract_edge(e).expect("edge taken from graph");
    let p = chromatic_rec(&del, cache) - chromatic_rec(&con, cache);
    cache.insert(key, p.clone());
    p
}

/// Trees, cycles and complete graphs; `g` must be connected.
fn closed_form(g: &Graph) -> Option<Polynomial> {
    let n = g.n();
    if g.m() + 1 == n {
        return Some(Polynomial::x() * Polynomial::linear(1).pow(n - 1));
    }
    if g.is_complete() {
        return Some(Polynomial::falling_factorial(n));
    }
    if g.m() == n && (0..n).all(|v| g.degree(v) == 2) {
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        return Some(Polynomial::linear(1).pow(n) + Polynomial::from_i64s(&[-sign, sign]));
    }
    None
}

/// The edge whose ends share the most neighbours; ties go to the lowest index.
fn pick_edge(g: &Graph) -> Edge {
    let mut best = g.edges()[0];
    let mut score = None;
    for &e in g.edges() {
        let s = g.common_neighbors(e.u(), e.v());
        if score.is_none_or(|b| s > b) {
            score = Some(s);
            best = e;
        }
    }
    best
}

/// `Σ_{A ⊆ E} (-1)^{|A|} x^{c(A)}` by direct enumeration of edge subsets.
pub fn whitney_polynomial(g: &Graph) -> Result<Polynomial, PolyError> {
    whitney_polynomial_with_limit(g, DEFAULT_WHITNEY_EDGE_LIMIT)
}

pub fn whitney_polynomial_with_limit(g: &Graph, limit: usize) -> Result<Polynomial, PolyError> {
    let m = g.m();
    if m > limit || m >= 63 {
        return Err(PolyError::EdgeLimit { m, limit });
    }
    let n = g.n();
    let edges = g.edges();
    let mut counts = vec![0i64; n + 1];
    let mut parent = vec![0usize; n];
    for subset in 0u64..(1u64 << m) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut comps = n;
        for (i, e) in edges.iter().enumerate() {
            if subset >> i & 1 == 0 {
                continue;
            }
            let (a, b) = (find(&mut parent, e.u()), find(&mut parent, e.v()));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        counts[comps] += if subset.count_ones() % 2 == 0 { 1 } else { -1 };
    }
    Ok(Polynomial::from_coeffs(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Number of proper colourings `V -> {0..m-1}`, by backtracking.
pub fn count_proper_colorings(g: &Graph, m: usize) -> BigUint {
    let n = g.n();
    if n == 0 {
        return BigUint::from(1u8);
    }
    if m == 0 {
        return BigUint::default();
    }
    let earlier: Vec<Vec<Vertex>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().filter(|&w| w < v).collect())
        .collect();
    let mut colour = vec![0usize; n];
    let mut used = vec![false; m];
    fn rec(
        v: usize,
        m: usize,
        earlier: &[Vec<Vertex>],
        colour: &mut [usize],
        used: &mut [bool],
    ) -> u128 {
        if v + 1 == earlier.len() {
            for &w in &earlier[v] {
                used[colour[w]] = true;
            }
            let free = used.iter().filter(|&&u| !u).count() as u128;
            for &w in &earlier[v] {
                used[colour[w]] = false;
            }
            return free;
        }
        let mut total = 0;
        for c in 0..m {
            if earlier[v].iter().any(|&w| colour[w] == c) {
                continue;
            }
            colour[v] = c;
            total += rec(v + 1, m, earlier, colour, used);
        }
        total
    }
    BigUint::from(rec(0, m, &earlier, &mut colour, &mut used))
}

/// Least `m` with `P(G, m) > 0`.
pub fn chromatic_number(g: &Graph) -> usize {
    let p = chromatic_polynomial(g);
    (0..).find(|&m| p.eval_i64(m as i64) > BigInt::default()).unwrap_or(0)
}

/// Both sides of `P(G,x) = (x - d(u)) P(G - u, x)` for simplicial `u`.
pub fn simplicial_peel_identity(g: &Graph, u: Vertex) -> Result<(Polynomial, Polynomial), PolyError> {
    if u >= g.n() {
        return Err(GraphError::AbsentVertex(u).into());
    }
    if !g.is_simplicial(u) {
        return Err(PolyError::NotSimplicial(u));
    }
    let (rest, _) = g.delete_vertex(u)?;
    let rhs = Polynomial::linear(g.degree(u) as i64) * chromatic_polynomial(&rest);
    Ok((chromatic_polynomial(g), rhs))
}

/// Cross-multiplied clique-gluing identity
/// `P(G) · x(x-1)…(x-k+1) = P(G1) · P(G2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZykovCheck {
    pub glued: Graph,
    pub glued_times_falling: Polynomial,
    pub product: Polynomial,
    pub holds: bool,
}

pub fn zykov_identity_check(
    g1: &Graph,
    g2: &Graph,
    c1: &[Vertex],
    c2: &[Vertex],
) -> Result<ZykovCheck, PolyError> {
    let glued = g1.glue_cliques(g2, c1, c2)?;
    let lhs = chromatic_polynomial(&glued) * Polynomial::falling_factorial(c1.len());
    let rhs = chromatic_polynomial(g1) * chromatic_polynomial(g2);
    Ok(ZykovCheck {
        holds: lhs == rhs,
        glued,
        glued_times_falling: lhs,
        product: rhs,
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

    #[test]
    fn triangle_polynomial() {
        let k3 = cycle(3);
        assert_eq!(chromatic_polynomial(&k3), Polynomial::from_i64s(&[0, 2, -3, 1]));
        assert_eq!(whitney_polynomial(&k3).unwrap(), Polynomial::from_i64s(&[0, 2, -3, 1]));
    }

    #[test]
    fn tree_and_c4() {
        let star = graph_unchecked(4, &[(0, 1), (0, 2), (0, 3)]);
        let expect = Polynomial::x() * Polynomial::linear(1).pow(3);
        assert_eq!(chromatic_polynomial(&star), expect);
        // (x-1)^4 + (x-1)
        assert_eq!(
            chromatic_polynomial(&cycle(4)),
            Polynomial::from_i64s(&[0, -3, 6, -4, 1])
        );
        for (m, want) in [(2u32, 2u32), (3, 18), (4, 84)] {
            assert_eq!(count_proper_colorings(&cycle(4), m as usize), BigUint::from(want));
        }
    }

    #[test]
    fn whitney_small_cases() {
        assert_eq!(
            whitney_polynomial(&Graph::empty(4)).unwrap(),
            Polynomial::x().pow(4)
        );
        let k2 = graph_unchecked(2, &[(0, 1)]);
        assert_eq!(whitney_polynomial(&k2).unwrap(), Polynomial::from_i64s(&[0, -1, 1]));
        assert!(matches!(
            whitney_polynomial_with_limit(&cycle(5), 4),
            Err(PolyError::EdgeLimit { m: 5, limit: 4 })
        ));
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_proper_colorings(&cycle(3), 3), BigUint::from(6u8));
        assert_eq!(count_proper_colorings(&cycle(4), 2), BigUint::from(2u8));
        assert_eq!(count_proper_colorings(&cycle(4), 0), BigUint::default());
        assert_eq!(count_proper_colorings(&Graph::empty(0), 0), BigUint::from(1u8));
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&cycle(5)), 3);
        let k4 = graph_unchecked(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(chromatic_number(&k4), 4);
        assert_eq!(chromatic_number(&Graph::empty(3)), 1);
    }

    #[test]
    fn peel_identity_examples() {
        // diamond: 0 and 3 are the degree-2 simplicial vertices
        let diamond = graph_unchecked(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let (lhs, rhs) = simplicial_peel_identity(&diamond, 0).unwrap();
        assert_eq!(lhs, rhs);
        let want = Polynomial::x() * Polynomial::linear(1) * Polynomial::linear(2).pow(2);
        assert_eq!(lhs, want);

        let k1 = Graph::empty(1);
        let (l, r) = simplicial_peel_identity(&k1, 0).unwrap();
        assert_eq!((l.clone(), r), (Polynomial::x(), Polynomial::x()));

        let pendant = graph_unchecked(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let (l, r) = simplicial_peel_identity(&pendant, 3).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, Polynomial::linear(1) * Polynomial::falling_factorial(3));

        assert_eq!(
            simplicial_peel_identity(&cycle(4), 0),
            Err(PolyError::NotSimplicial(0))
        );
    }

    #[test]
    fn zykov_examples() {
        let t = cycle(3);
        let z = zykov_identity_check(&t, &t, &[0, 1], &[0, 1]).unwrap();
        assert!(z.holds);
        assert_eq!(
            chromatic_polynomial(&z.glued),
            Polynomial::x() * Polynomial::linear(1) * Polynomial::linear(2).pow(2)
        );
        let k2 = graph_unchecked(2, &[(0, 1)]);
        let z = zykov_identity_check(&k2, &k2, &[1], &[0]).unwrap();
        assert!(z.holds);
        assert_eq!(
            chromatic_polynomial(&z.glued),
            Polynomial::x() * Polynomial::linear(1).pow(2)
        );
        assert!(matches!(
            zykov_identity_check(&k2, &k2, &[], &[]),
            Err(PolyError::Graph(GraphError::EmptyClique))
        ));
    }
}
