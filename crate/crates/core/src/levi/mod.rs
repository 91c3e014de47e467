//! Levi graphs and the graph algorithms behind the realizability test.

pub(crate) mod decide;
mod graph;
mod peel;

pub use decide::{decide_realizability, DecideError, RealizabilityStatus, RealizabilityVerdict, Witness};
pub use graph::{Girth, Graph};
pub use peel::{peel, peel_protected, PeelTrace, TraceParseError};

use std::collections::BTreeSet;

use crate::iso::levi_adjacency;
use crate::realization::Placed;
use crate::structure::IncidenceStructure;

/// A vertex of a Levi graph.
pub type Vertex = Placed;

/// Bipartite point/line incidence graph. Points occupy vertex ids `0..n`
/// and lines `n..n+m`, which is also the canonical label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviGraph {
    graph: Graph,
    point_count: usize,
    line_count: usize,
}

/// Levi graph of a validated structure.
pub fn levi(s: &IncidenceStructure) -> LeviGraph {
    LeviGraph {
        graph: Graph::from_adjacency(levi_adjacency(s)),
        point_count: s.point_count(),
        line_count: s.line_count(),
    }
}

impl LeviGraph {
    /// Levi graph of an unchecked point/line incidence list. Lines may share
    /// any number of points.
    pub fn from_raw(point_count: usize, lines: &[Vec<usize>]) -> Self {
        let mut graph = Graph::new(point_count + lines.len());
        for (l, pts) in lines.iter().enumerate() {
            for &p in pts {
                assert!(p < point_count, "point {p} out of range");
                graph.add_edge(p, point_count + l);
            }
        }
        LeviGraph { graph, point_count, line_count: lines.len() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn line_count(&self) -> usize {
        self.line_count
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn id(&self, v: Vertex) -> usize {
        match v {
            Placed::Point(p) => p,
            Placed::Line(l) => self.point_count + l,
        }
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        if id < self.point_count {
            Placed::Point(id)
        } else {
            Placed::Line(id - self.point_count)
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.graph.degree(self.id(v))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.graph.neighbors(self.id(v)).iter().map(|&u| self.vertex(u))
    }

    /// Removes the incidence between `point` and `line`.
    pub fn without_incidence(&self, point: usize, line: usize) -> Option<LeviGraph> {
        let mut g = self.clone();
        g.graph
            .remove_edge(point, self.point_count + line)
            .then_some(g)
    }

    pub fn girth(&self) -> Girth {
        self.graph.girth()
    }

    /// Cut-edges as `(point, line)` pairs in canonical order.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        self.graph
            .bridges()
            .into_iter()
            .map(|(u, v)| (u, v - self.point_count))
            .collect()
    }

    /// Connected components as vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.graph
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| self.vertex(v)).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    /// Split a vertex set into its point and line indices.
    pub fn split(&self, vertices: &[Vertex]) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut pts = BTreeSet::new();
        let mut lns = BTreeSet::new();
        for v in vertices {
            match *v {
                Placed::Point(p) => pts.insert(p),
                Placed::Line(l) => lns.insert(l),
            };
        }
        (pts, lns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::tests::fano;
    use crate::structure::validate;

    #[test]
    fn heawood_graph_from_fano() {
        let g = levi(&fano());
        assert_eq!((g.vertex_count(), g.edge_count()), (14, 21));
        assert_eq!(g.girth(), Girth::Finite(6));
        assert!(g.bridges().is_empty());
    }

    #[test]
    fn quadrangle_levi_counts() {
        let k4 = validate(
            ["a", "b", "c", "d"],
            [["a", "b"], ["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"], ["c", "d"]],
        )
        .unwrap();
        let g = levi(&k4);
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 12));
    }

    #[test]
    fn raw_lines_sharing_two_points_give_girth_four() {
        let g = LeviGraph::from_raw(4, &[vec![0, 1, 2], vec![0, 1, 3]]);
        assert_eq!(g.girth(), Girth::Finite(4));
    }

    #[test]
    fn single_two_point_line_is_a_path() {
        let g = LeviGraph::from_raw(2, &[vec![0, 1]]);
        assert_eq!(g.girth(), Girth::Infinite);
        assert_eq!(g.bridges(), vec![(0, 0), (1, 0)]);
    }
}
