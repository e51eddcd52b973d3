use super::{Edge, Graph, Vertex};

/// A maximal 2-connected subgraph, a bridge, or an isolated vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
}

struct Tarjan<'g> {
    g: &'g Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<Edge>,
    blocks: Vec<Block>,
    is_cut: Vec<bool>,
}

impl Tarjan<'_> {
    fn dfs(&mut self, x: Vertex, parent: Option<Vertex>) {
        self.time += 1;
        self.disc[x] = self.time;
        self.low[x] = self.time;
        let mut children = 0;
        for &y in self.g.neighbors(x) {
            if Some(y) == parent {
                continue;
            }
            if self.disc[y] == 0 {
                children += 1;
                self.stack.push(Edge::new(x, y));
                self.dfs(y, Some(x));
                self.low[x] = self.low[x].min(self.low[y]);
                if self.low[y] >= self.disc[x] {
                    if parent.is_some() || children > 1 {
                        self.is_cut[x] = true;
                    }
                    self.pop_block(Edge::new(x, y));
                }
            } else if self.disc[y] < self.disc[x] {
                self.stack.push(Edge::new(x, y));
                self.low[x] = self.low[x].min(self.disc[y]);
            }
        }
    }

    fn pop_block(&mut self, until: Edge) {
        let mut edges = Vec::new();
        while let Some(e) = self.stack.pop() {
            edges.push(e);
            if e == until {
                break;
            }
        }
        let mut vertices: Vec<Vertex> = edges.iter().flat_map(|e| [e.u(), e.v()]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        edges.sort_unstable();
        self.blocks.push(Block { vertices, edges });
    }
}

impl Graph {
    /// Connected components as sorted vertex lists, ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut label = vec![usize::MAX; self.n()];
        let mut comps = Vec::new();
        for root in 0..self.n() {
            if label[root] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut comp = vec![root];
            label[root] = id;
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in self.neighbors(x) {
                    if label[y] == usize::MAX {
                        label[y] = id;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Blocks (including bridges and isolated vertices) ordered by their
    /// sorted vertex lists, plus the sorted cut vertices.
    pub fn blocks(&self) -> BlockDecomposition {
        let n = self.n();
        let mut t = Tarjan {
            g: self,
            disc: vec![0; n],
            low: vec![0; n],
            time: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
            is_cut: vec![false; n],
        };
        for v in 0..n {
            if t.disc[v] == 0 {
                if self.degree(v) == 0 {
                    t.disc[v] = usize::MAX;
                    t.blocks.push(Block {
                        vertices: vec![v],
                        edges: Vec::new(),
                    });
                } else {
                    t.dfs(v, None);
                }
            }
        }
        let mut blocks = t.blocks;
        blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        let cut_vertices = (0..n).filter(|&v| t.is_cut[v]).collect();
        BlockDecomposition {
            blocks,
            cut_vertices,
        }
    }

    pub fn bridges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .blocks()
            .blocks
            .into_iter()
            .filter(Block::is_bridge)
            .map(|b| b.edges[0])
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_bridge(&self, e: Edge) -> bool {
        self.has_edge(e.u(), e.v()) && self.bfs_distances(e.u(), Some(e))[e.v()].is_none()
    }

    /// The subgraph formed by one block, relabelled densely in sorted id order.
    pub fn block_subgraph(&self, block: &Block) -> Graph {
        self.induced_subgraph(&block.vertices).0
    }
}
