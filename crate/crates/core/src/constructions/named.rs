use std::fmt;
use std::str::FromStr;

use super::ConstructionError;
use crate::graph::{graph_unchecked, Graph};

/// The fixed example graphs, with hard-coded 0-based edge lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedGraph {
    Fig1G1,
    Fig1G2,
    Fig2G1,
    Petersen,
    Fig2G3,
}

impl NamedGraph {
    pub const ALL: [NamedGraph; 5] = [
        NamedGraph::Fig1G1,
        NamedGraph::Fig1G2,
        NamedGraph::Fig2G1,
        NamedGraph::Petersen,
        NamedGraph::Fig2G3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedGraph::Fig1G1 => "fig1-G1",
            NamedGraph::Fig1G2 => "fig1-G2",
            NamedGraph::Fig2G1 => "fig2-G1",
            NamedGraph::Petersen => "petersen",
            NamedGraph::Fig2G3 => "fig2-G3",
        }
    }

    pub fn graph(self) -> Graph {
        match self {
            // C4 on {1,4,6,3} with a triangle on each of its edges
            NamedGraph::Fig1G1 => graph_unchecked(
                8,
                &[
                    (1, 4), (4, 6), (6, 3), (3, 1),
                    (0, 1), (1, 2), (2, 4), (4, 7), (7, 6), (6, 5), (5, 3), (3, 0),
                ],
            ),
            // outer 10-cycle 0-1-2-3-4-9-8-7-6-5 with chords
            NamedGraph::Fig1G2 => graph_unchecked(
                10,
                &[
                    (0, 1), (1, 2), (2, 3), (3, 4), (4, 9), (9, 8), (8, 7), (7, 6), (6, 5), (5, 0),
                    (2, 8), (3, 8), (4, 8), (2, 7),
                ],
            ),
            NamedGraph::Fig2G1 => graph_unchecked(
                8,
                &[
                    (0, 1), (1, 3), (3, 6), (6, 5), (3, 2), (3, 4), (3, 7),
                    (0, 5), (1, 2), (2, 4), (4, 7), (7, 6),
                ],
            ),
            NamedGraph::Petersen => graph_unchecked(
                10,
                &[
                    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                ],
            ),
            NamedGraph::Fig2G3 => graph_unchecked(
                12,
                &[
                    (0, 1), (1, 2), (2, 5), (5, 8), (8, 4), (3, 7), (7, 10), (10, 8), (8, 11), (11, 9), (9, 6),
                    (3, 4), (4, 5), (5, 6), (0, 4),
                ],
            ),
        }
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedGraph {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedGraph::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| ConstructionError::UnknownName(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle, phi_route};
    use crate::structure::{edge_ells, girth, Ell};

    #[test]
    fn sizes() {
        let sizes: Vec<_> = NamedGraph::ALL.iter().map(|g| (g.graph().n(), g.graph().m())).collect();
        assert_eq!(sizes, vec![(8, 12), (10, 14), (8, 12), (10, 15), (12, 15)]);
        assert!(NamedGraph::ALL.iter().all(|g| g.graph().is_connected()));
        assert_eq!("Petersen".parse::<NamedGraph>(), Ok(NamedGraph::Petersen));
        assert!("fig3".parse::<NamedGraph>().is_err());
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&NamedGraph::Petersen.graph()), Ell::Finite(5));
        assert!(edge_ells(&NamedGraph::Fig1G1.graph()).iter().all(|&l| l == Ell::Finite(3)));
    }

    #[test]
    fn figure_one_graphs_are_triangle_gluings() {
        let g1 = NamedGraph::Fig1G1.graph();
        let route = phi_route(&cycle(4).unwrap(), &g1).unwrap().unwrap();
        assert_eq!(route.len(), 4);
        let g2 = NamedGraph::Fig1G2.graph();
        assert_eq!(phi_route(&cycle(6).unwrap(), &g2).unwrap().map(|r| r.len()), Some(4));
    }
}
