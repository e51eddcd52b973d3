use super::{Graph, Vertex};

impl Graph {
    pub fn is_simplicial(&self, v: Vertex) -> bool {
        self.is_clique(self.neighbors(v))
    }

    pub fn simplicial_vertices(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.is_simplicial(v)).collect()
    }

    /// An ordering `v_1..v_n` in which each `v_i` is simplicial in the
    /// subgraph induced by `v_1..v_i`, or `None` if the graph is not chordal.
    pub fn perfect_elimination_ordering(&self) -> Option<Vec<Vertex>> {
        let n = self.n();
        let mut alive = vec![true; n];
        let mut elim = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n).find(|&v| {
                alive[v] && {
                    let nb: Vec<Vertex> =
                        self.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
                    self.is_clique(&nb)
                }
            })?;
            alive[v] = false;
            elim.push(v);
        }
        elim.reverse();
        Some(elim)
    }

    /// One more than the degeneracy: the least `d` for which some vertex
    /// ordering has fewer than `d` earlier neighbours at every vertex.
    pub fn coloring_number(&self) -> usize {
        let n = self.n();
        if n == 0 {
            return 0;
        }
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; n];
        let mut worst = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| alive[v])
                .min_by_key(|&v| (deg[v], v))
                .unwrap_or(0);
            worst = worst.max(deg[v]);
            alive[v] = false;
            for &w in self.neighbors(v) {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        }
        worst + 1
    }
}
