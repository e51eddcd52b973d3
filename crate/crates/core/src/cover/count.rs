use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::{vertex_order, Cover, CoverError, Matching};
use crate::graph::{Edge, Graph};

pub const DEFAULT_IE_EDGE_LIMIT: usize = 20;

/// Vertex order and edge constraints for backtracking over transversals,
/// reusable across covers of the same graph.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    n: usize,
    order: Vec<usize>,
    /// For position `p`: `(earlier position, edge index, earlier vertex is the low end)`.
    cons: Vec<Vec<(usize, usize, bool)>>,
    /// No later position depends on the choice made at `p`.
    free: Vec<bool>,
}

impl Plan {
    pub(crate) fn new(g: &Graph) -> Self {
        let order = vertex_order(g);
        let mut pos = vec![0; g.n()];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut cons = vec![Vec::new(); g.n()];
        let mut free = vec![true; g.n()];
        for (k, e) in g.edges().iter().enumerate() {
            let (pu, pv) = (pos[e.u()], pos[e.v()]);
            let (early, late) = (pu.min(pv), pu.max(pv));
            cons[late].push((early, k, pu < pv));
            free[early] = false;
        }
        Plan {
            n: g.n(),
            order,
            cons,
            free,
        }
    }

    /// `tables[p][c][a]`: colours forbidden at position `p` when its `c`-th
    /// constraint partner chose `a`.
    fn tables(&self, m: usize, matchings: &[Matching]) -> Vec<Vec<Vec<u64>>> {
        self.cons
            .iter()
            .map(|cs| {
                cs.iter()
                    .map(|&(_, k, early_is_low)| {
                        let mt = &matchings[k];
                        (0..m)
                            .map(|a| {
                                let hit = if early_is_low { mt.image(a) } else { mt.preimage(a) };
                                hit.map_or(0, |b| 1u64 << b)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    fn allowed(&self, p: usize, full: u64, tables: &[Vec<Vec<u64>>], choice: &[usize]) -> u64 {
        let forb = self.cons[p]
            .iter()
            .zip(&tables[p])
            .fold(0, |acc, (&(q, _, _), t)| acc | t[choice[q]]);
        full & !forb
    }

    fn rec<A>(&self, p: usize, full: u64, tables: &[Vec<Vec<u64>>], choice: &mut [usize]) -> A
    where
        A: Clone + Zero + From<u32> + Add<Output = A> + Mul<Output = A>,
    {
        let allowed = self.allowed(p, full, tables, choice);
        if p + 1 == self.n {
            return A::from(allowed.count_ones());
        }
        if allowed == 0 {
            return A::zero();
        }
        if self.free[p] {
            choice[p] = allowed.trailing_zeros() as usize;
            return A::from(allowed.count_ones()) * self.rec(p + 1, full, tables, choice);
        }
        let mut total = A::zero();
        let mut bits = allowed;
        while bits != 0 {
            choice[p] = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            total = total + self.rec(p + 1, full, tables, choice);
        }
        total
    }

    pub(crate) fn count(&self, m: usize, matchings: &[Matching]) -> BigUint {
        if self.n == 0 {
            return BigUint::from(1u32);
        }
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let tables = self.tables(m, matchings);
        let mut choice = vec![0; self.n];
        if (self.n as f64) * (m as f64).log2() < 126.0 {
            BigUint::from(self.rec::<u128>(0, full, &tables, &mut choice))
        } else {
            self.rec::<BigUint>(0, full, &tables, &mut choice)
        }
    }

    fn find(
        &self,
        p: usize,
        full: u64,
        tables: &[Vec<Vec<u64>>],
        fixed: &[Option<usize>],
        choice: &mut [usize],
    ) -> bool {
        if p == self.n {
            return true;
        }
        let mut bits = self.allowed(p, full, tables, choice);
        if let Some(f) = fixed[self.order[p]] {
            bits &= 1 << f;
        }
        while bits != 0 {
            choice[p] = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.find(p + 1, full, tables, fixed, choice) {
                return true;
            }
        }
        false
    }
}

/// Number of independent transversals of the cover graph, `|𝒯(G, H)|`.
pub fn count_transversals(cover: &Cover) -> BigUint {
    Plan::new(cover.graph()).count(cover.fold(), cover.matchings())
}

pub(super) fn extend_partial(cover: &Cover, partial: &[Option<usize>]) -> Result<Option<Vec<usize>>, CoverError> {
    let g = cover.graph();
    let m = cover.fold();
    if partial.len() != g.n() {
        return Err(CoverError::PartialLength {
            got: partial.len(),
            want: g.n(),
        });
    }
    if let Some(v) = partial.iter().position(|c| c.is_some_and(|c| c >= m)) {
        return Err(CoverError::PartialIndex { vertex: v, m });
    }
    for (e, mt) in g.edges().iter().zip(cover.matchings()) {
        if let (Some(a), Some(b)) = (partial[e.u()], partial[e.v()]) {
            if mt.image(a) == Some(b) {
                return Err(CoverError::DependentPartial(*e));
            }
        }
    }
    let plan = Plan::new(g);
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let tables = plan.tables(m, cover.matchings());
    let mut choice = vec![0; g.n()];
    if !plan.find(0, full, &tables, partial, &mut choice) {
        return Ok(None);
    }
    let mut out = vec![0; g.n()];
    for (p, &v) in plan.order.iter().enumerate() {
        out[v] = choice[p];
    }
    Ok(Some(out))
}

pub fn count_transversals_ie(cover: &Cover) -> Result<BigUint, CoverError> {
    count_transversals_ie_with_limit(cover, DEFAULT_IE_EDGE_LIMIT)
}

/// Inclusion-exclusion over edge subsets `A`: transversals that hit a
/// matched pair on every edge of `A` are fixed, per component of `(V, A)`,
/// by the choice at one root.
pub fn count_transversals_ie_with_limit(cover: &Cover, limit: usize) -> Result<BigUint, CoverError> {
    let g = cover.graph();
    let m = cover.fold();
    if g.m() > limit {
        return Err(CoverError::EdgeLimit { m: g.m(), limit });
    }
    let mut total = BigInt::zero();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n()];
    let mut value = vec![None; g.n()];
    for mask in 0u64..(1u64 << g.m()) {
        for a in adj.iter_mut() {
            a.clear();
        }
        for (k, e) in g.edges().iter().enumerate() {
            if mask >> k & 1 == 1 {
                adj[e.u()].push((e.v(), k));
                adj[e.v()].push((e.u(), k));
            }
        }
        let mut term = BigInt::from(1);
        let mut done = vec![false; g.n()];
        for root in 0..g.n() {
            if done[root] {
                continue;
            }
            let comp = component(&adj, root, &mut done);
            let ways = (0..m)
                .filter(|&t| propagate(g.edges(), cover.matchings(), &adj, &comp, t, &mut value))
                .count();
            term *= ways;
            if ways == 0 {
                break;
            }
        }
        if mask.count_ones() % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total.to_biguint().unwrap_or_default())
}

fn component(adj: &[Vec<(usize, usize)>], root: usize, done: &mut [bool]) -> Vec<usize> {
    let mut comp = vec![root];
    done[root] = true;
    let mut i = 0;
    while i < comp.len() {
        for &(y, _) in &adj[comp[i]] {
            if !done[y] {
                done[y] = true;
                comp.push(y);
            }
        }
        i += 1;
    }
    comp
}

fn propagate(
    edges: &[Edge],
    matchings: &[Matching],
    adj: &[Vec<(usize, usize)>],
    comp: &[usize],
    start: usize,
    value: &mut [Option<usize>],
) -> bool {
    for &v in comp {
        value[v] = None;
    }
    value[comp[0]] = Some(start);
    let mut stack = vec![comp[0]];
    while let Some(x) = stack.pop() {
        let a = value[x].unwrap_or_default();
        for &(y, k) in &adj[x] {
            let mt = &matchings[k];
            let b = if edges[k].u() == x { mt.image(a) } else { mt.preimage(a) };
            let Some(b) = b else { return false };
            match value[y] {
                Some(c) if c != b => return false,
                Some(_) => {}
                None => {
                    value[y] = Some(b);
                    stack.push(y);
                }
            }
        }
    }
    true
}
