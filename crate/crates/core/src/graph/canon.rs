//! Exact canonical forms for small graphs by colour refinement plus
//! individualization search over the refined partition.

use super::{Graph, GraphError};

pub const DEFAULT_CANON_LIMIT: usize = 10;

/// Equal keys iff the graphs are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey, GraphError> {
    canonical_key_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_key_with_limit(g: &Graph, limit: usize) -> Result<CanonicalKey, GraphError> {
    let n = g.n();
    if n > limit || n > 64 {
        return Err(GraphError::CanonLimit { n, limit });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let mut search = Search {
        adj: &adj,
        best: None,
    };
    search.descend(vec![(0..n).collect()]);
    let mut key = (n as u32).to_be_bytes().to_vec();
    key.extend(search.best.unwrap_or_default());
    Ok(CanonicalKey(key))
}

struct Search<'a> {
    adj: &'a [u64],
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let masks: Vec<u64> = cells
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect();
            let mut next = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let sig = masks.iter().map(|m| (self.adj[v] & m).count_ones()).collect();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|k| k.1).collect());
                        start = i;
                    }
                }
            }
            let done = next.len() == cells.len();
            cells = next;
            if done {
                return cells;
            }
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        let without = |x: u64, y: usize| x & !(1u64 << y);
        without(self.adj[a], b) == without(self.adj[b], a)
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().flatten().collect();
            let code = self.code(&order);
            if self.best.as_ref().is_none_or(|b| code > *b) {
                self.best = Some(code);
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = next[target].iter().copied().filter(|&x| x != v).collect();
            next[target] = vec![v];
            next.insert(target + 1, rest);
            self.descend(next);
        }
    }

    fn code(&self, order: &[usize]) -> Vec<u8> {
        let n = order.len();
        let mut bytes = vec![0u8; (n * n.saturating_sub(1) / 2).div_ceil(8)];
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[order[i]] >> order[j] & 1 == 1 {
                    bytes[bit / 8] |= 0x80 >> (bit % 8);
                }
                bit += 1;
            }
        }
        bytes
    }
}
