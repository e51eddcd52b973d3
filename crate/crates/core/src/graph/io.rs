//! Text formats: the `n m` edge list, graph6, and DOT output.

use std::fmt::Write as _;

use super::{Edge, Graph, GraphError};

/// Reads either an edge list (`n m` header, then `u v` lines) or a single
/// graph6 string. An optional `>>graph6<<` prefix is accepted. Lines
/// starting with `#` are ignored in edge lists.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let first = lines
        .next()
        .ok_or_else(|| GraphError::Parse("empty input".into()))?;
    if first.split_whitespace().count() == 1 && first.parse::<usize>().is_err() {
        let g6 = first.strip_prefix(">>graph6<<").unwrap_or(first);
        return from_graph6(g6);
    }
    parse_edge_list_lines(first, lines)
}

fn parse_edge_list_lines<'a>(
    header: &str,
    rest: impl Iterator<Item = &'a str>,
) -> Result<Graph, GraphError> {
    let nums = |line: &str| -> Result<Vec<usize>, GraphError> {
        line.split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| GraphError::Parse(format!("not a number: {t:?}")))
            })
            .collect()
    };
    let head = nums(header)?;
    let (n, m) = match head[..] {
        [n, m] => (n, m),
        [n] => (n, usize::MAX),
        _ => return Err(GraphError::Parse(format!("bad header {header:?}"))),
    };
    let mut edges = Vec::new();
    for line in rest {
        match nums(line)?[..] {
            [u, v] => edges.push((u, v)),
            _ => return Err(GraphError::Parse(format!("bad edge line {line:?}"))),
        }
    }
    if m != usize::MAX && edges.len() != m {
        return Err(GraphError::Parse(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::new(n, edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.u(), e.v());
    }
    s
}

pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut s = format!("graph \"{name}\" {{\n");
    for v in 0..g.n() {
        let _ = writeln!(s, "  {v};");
    }
    for e in g.edges() {
        let _ = writeln!(s, "  {} -- {};", e.u(), e.v());
    }
    s.push_str("}\n");
    s
}

pub fn from_graph6(s: &str) -> Result<Graph, GraphError> {
    let bytes: Vec<u8> = s.trim().bytes().collect();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Parse("graph6: byte out of range".into()));
    }
    let (n, body) = match bytes.first() {
        None => return Err(GraphError::Parse("graph6: empty".into())),
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                return Err(GraphError::Parse("graph6: n too large".into()));
            }
            if bytes.len() < 4 {
                return Err(GraphError::Parse("graph6: truncated size".into()));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &bytes[4..])
        }
        Some(&b) => ((b - 63) as usize, &bytes[1..]),
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != need {
        return Err(GraphError::Parse(format!(
            "graph6: expected {need} data bytes, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push(Edge::new(i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = if n <= 62 {
        vec![n as u8 + 63]
    } else {
        vec![
            126,
            ((n >> 12) & 63) as u8 + 63,
            ((n >> 6) & 63) as u8 + 63,
            (n & 63) as u8 + 63,
        ]
    };
    let total = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; total.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                data[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    out.extend(data.into_iter().map(|b| b + 63));
    String::from_utf8(out).unwrap_or_default()
}
