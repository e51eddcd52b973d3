//! Slow reference implementations used to cross-check the library.
//! Nothing here shares code with the searches it checks.
#![allow(dead_code)]

use dpcolor_core::cover::perm::all_permutations;
use dpcolor_core::{Edge, Graph};

/// Calls `visit` on every word in `[0, base)^len`.
fn for_each_word(base: usize, len: usize, mut visit: impl FnMut(&[usize])) {
    if base == 0 && len > 0 {
        return;
    }
    let mut w = vec![0usize; len];
    loop {
        visit(&w);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < base {
                break;
            }
            w[i] = 0;
        }
    }
}

/// Proper `m`-colorings by trying every map `V → [m]`.
pub fn brute_colorings(g: &Graph, m: usize) -> u64 {
    let mut count = 0;
    for_each_word(m, g.n(), |c| {
        if g.edges().iter().all(|e| c[e.u()] != c[e.v()]) {
            count += 1;
        }
    });
    count
}

/// Transversals of a cover given as one forward table per edge
/// (`table[e][i] = Some(j)` joins `(u, i)` to `(v, j)` for `e = u-v`, `u < v`).
/// Assigns vertices in label order and tests each edge once its higher
/// end is placed.
pub fn brute_transversals(g: &Graph, m: usize, tables: &[Vec<Option<usize>>]) -> u64 {
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (k, e) in g.edges().iter().enumerate() {
        closing[e.v()].push(k);
    }
    fn go(g: &Graph, m: usize, tables: &[Vec<Option<usize>>], closing: &[Vec<usize>], c: &mut Vec<usize>) -> u64 {
        let v = c.len();
        if v == g.n() {
            return 1;
        }
        let mut total = 0;
        for colour in 0..m {
            let blocked = closing[v]
                .iter()
                .any(|&k| tables[k][c[g.edges()[k].u()]] == Some(colour));
            if !blocked {
                c.push(colour);
                total += go(g, m, tables, closing, c);
                c.pop();
            }
        }
        total
    }
    go(g, m, tables, &closing, &mut Vec::with_capacity(g.n()))
}

/// `min` over every cover whose matchings are all perfect, with no gauge
/// fixing and no symmetry reduction.
pub fn brute_dp_full(g: &Graph, m: usize) -> u64 {
    let perms = all_permutations(m);
    let mut best = u64::MAX;
    for_each_word(perms.len(), g.m(), |pick| {
        let tables: Vec<Vec<Option<usize>>> = pick
            .iter()
            .map(|&k| perms[k].iter().map(|&j| Some(j)).collect())
            .collect();
        best = best.min(brute_transversals(g, m, &tables));
    });
    best
}

/// Number of covers `brute_dp_full` examines.
pub fn full_cover_count(g: &Graph, m: usize) -> u64 {
    (all_permutations(m).len() as u64).pow(g.m() as u32)
}

/// Shortest cycle length through `e` and the number of such cycles, by
/// listing every simple `u`–`v` path in `G − e`. `None` for bridges.
pub fn brute_cycles_through(g: &Graph, e: Edge) -> Option<(usize, u64)> {
    let (u, v) = e.ends();
    let mut best: Option<(usize, u64)> = None;
    let mut on_path = vec![false; g.n()];
    fn walk(
        g: &Graph,
        e: Edge,
        at: usize,
        target: usize,
        len: usize,
        on_path: &mut [bool],
        best: &mut Option<(usize, u64)>,
    ) {
        if at == target {
            let cycle = len + 1;
            *best = match *best {
                Some((l, c)) if l == cycle => Some((l, c + 1)),
                Some((l, c)) if l < cycle => Some((l, c)),
                _ => Some((cycle, 1)),
            };
            return;
        }
        for &w in g.neighbors(at) {
            if on_path[w] || Edge::new(at, w) == e {
                continue;
            }
            on_path[w] = true;
            walk(g, e, w, target, len + 1, on_path, best);
            on_path[w] = false;
        }
    }
    on_path[u] = true;
    walk(g, e, u, v, 0, &mut on_path, &mut best);
    best
}

/// Every simple graph on `n` labelled vertices, as edge masks over the
/// pairs of `K_n`. Only for `n ≤ 6`.
pub fn all_labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p);
        Graph::new(n, edges).expect("pairs of K_n are valid")
    })
}
