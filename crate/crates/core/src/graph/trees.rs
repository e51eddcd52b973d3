use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Edge, Graph, GraphError};

pub const DEFAULT_TREE_CAP: usize = 100_000;

/// Result of a capped enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTrees {
    pub trees: Vec<Vec<Edge>>,
    /// False when the cap stopped the enumeration early.
    pub complete: bool,
}

struct Enumerator<'g, F> {
    g: &'g Graph,
    included: Vec<usize>,
    excluded: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[Edge]) -> ControlFlow<()>> Enumerator<'_, F> {
    fn connected_via_included(&self, e: Edge) -> bool {
        let mut parent: Vec<usize> = (0..self.g.n()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &i in &self.included {
            let f = self.g.edges()[i];
            let (a, b) = (find(&mut parent, f.u()), find(&mut parent, f.v()));
            parent[a] = b;
        }
        find(&mut parent, e.u()) == find(&mut parent, e.v())
    }

    /// Whether `e` is a bridge of the graph minus the excluded edges.
    fn is_bridge_of_remaining(&self, idx: usize) -> bool {
        let e = self.g.edges()[idx];
        let n = self.g.n();
        let mut seen = vec![false; n];
        let mut stack = vec![e.u()];
        seen[e.u()] = true;
        while let Some(x) = stack.pop() {
            for &y in self.g.neighbors(x) {
                if seen[y] {
                    continue;
                }
                let j = self.g.edge_index(Edge::new(x, y)).unwrap_or(usize::MAX);
                if j == idx || self.excluded[j] {
                    continue;
                }
                seen[y] = true;
                stack.push(y);
            }
        }
        !seen[e.v()]
    }

    fn run(&mut self, idx: usize) -> ControlFlow<()> {
        if self.included.len() + 1 == self.g.n() {
            let tree: Vec<Edge> = self.included.iter().map(|&i| self.g.edges()[i]).collect();
            return (self.visit)(&tree);
        }
        if idx == self.g.m() {
            return ControlFlow::Continue(());
        }
        let e = self.g.edges()[idx];
        if self.connected_via_included(e) {
            self.excluded[idx] = true;
            let r = self.run(idx + 1);
            self.excluded[idx] = false;
            return r;
        }
        self.included.push(idx);
        let r = self.run(idx + 1);
        self.included.pop();
        r?;
        if !self.is_bridge_of_remaining(idx) {
            self.excluded[idx] = true;
            let r = self.run(idx + 1);
            self.excluded[idx] = false;
            r?;
        }
        ControlFlow::Continue(())
    }
}

impl Graph {
    /// Visits every spanning tree in a fixed lexicographic order (edges
    /// are decided in index order, inclusion first). Each branch only
    /// drops an edge that is not a bridge of what remains, so every leaf
    /// is a spanning tree.
    pub fn for_each_spanning_tree<F>(&self, visit: F) -> Result<ControlFlow<()>, GraphError>
    where
        F: FnMut(&[Edge]) -> ControlFlow<()>,
    {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if self.n() <= 1 {
            let mut visit = visit;
            return Ok(visit(&[]));
        }
        let mut en = Enumerator {
            g: self,
            included: Vec::new(),
            excluded: vec![false; self.m()],
            visit,
        };
        Ok(en.run(0))
    }

    pub fn spanning_trees(&self, cap: usize) -> Result<SpanningTrees, GraphError> {
        let mut trees = Vec::new();
        let mut complete = true;
        let _ = self.for_each_spanning_tree(|t| {
            if trees.len() == cap {
                complete = false;
                return ControlFlow::Break(());
            }
            trees.push(t.to_vec());
            ControlFlow::Continue(())
        })?;
        Ok(SpanningTrees { trees, complete })
    }
}

/// Number of spanning trees by the matrix-tree theorem (exact Bareiss
/// elimination on a reduced Laplacian). Zero for disconnected graphs.
pub fn spanning_tree_count(g: &Graph) -> BigInt {
    let n = g.n();
    if n <= 1 {
        return BigInt::one();
    }
    let k = n - 1;
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); k]; k];
    for v in 1..n {
        a[v - 1][v - 1] = BigInt::from(g.degree(v));
    }
    for e in g.edges() {
        let (u, v) = e.ends();
        if u >= 1 {
            a[u - 1][v - 1] = BigInt::from(-1);
            a[v - 1][u - 1] = BigInt::from(-1);
        }
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..k {
        if a[p][p].is_zero() {
            match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let t = &a[i][j] * &a[p][p] - &a[i][p] * &a[p][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[p][p].clone();
    }
    sign * &a[k - 1][k - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_unchecked;

    #[test]
    fn cycle_has_n_trees() {
        let c5 = graph_unchecked(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let t = c5.spanning_trees(DEFAULT_TREE_CAP).unwrap();
        assert!(t.complete);
        assert_eq!(t.trees.len(), 5);
        assert_eq!(spanning_tree_count(&c5), BigInt::from(5));
    }

    #[test]
    fn k4_has_sixteen_trees() {
        let pairs: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        let k4 = graph_unchecked(4, &pairs);
        let t = k4.spanning_trees(DEFAULT_TREE_CAP).unwrap();
        assert_eq!(t.trees.len(), 16);
        assert_eq!(spanning_tree_count(&k4), BigInt::from(16));
        let mut sorted = t.trees.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 16);
    }

    #[test]
    fn tree_is_its_own_spanning_tree() {
        let p = graph_unchecked(4, &[(0, 1), (1, 2), (1, 3)]);
        let t = p.spanning_trees(10).unwrap();
        assert_eq!(t.trees, vec![p.edges().to_vec()]);
    }

    #[test]
    fn cap_and_disconnected() {
        let c5 = graph_unchecked(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let t = c5.spanning_trees(3).unwrap();
        assert_eq!(t.trees.len(), 3);
        assert!(!t.complete);
        let two = graph_unchecked(3, &[(0, 1)]);
        assert_eq!(two.spanning_trees(3), Err(GraphError::Disconnected));
        assert_eq!(spanning_tree_count(&two), BigInt::zero());
    }
}
