//! Degree peeling of a Levi graph and its reversal into draw instructions.
//!
//! Vertices of degree below three are removed one at a time, smallest degree
//! first and then smallest canonical label. Read backwards, every removed
//! vertex comes back with at most two neighbours already present, which is
//! exactly one of the six drawing moves in [`DrawInstruction`].

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::{LeviGraph, Vertex};
use crate::realization::{DrawInstruction, Placed};

/// Record of one peeling run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelTrace {
    pub point_count: usize,
    pub line_count: usize,
    /// Vertices in removal order.
    pub removed: Vec<Vertex>,
    /// Drawing instructions in replay order (reverse of removal).
    pub instructions: Vec<DrawInstruction>,
    /// Vertices never removed, in canonical order.
    pub leftover: Vec<Vertex>,
    /// Incidences `(point, line)` inside the leftover subgraph.
    pub leftover_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header field {0:?}")]
    MissingField(&'static str),
}

/// Peels with nothing protected.
pub fn peel(g: &LeviGraph) -> PeelTrace {
    peel_protected(g, &BTreeSet::new())
}

/// Peels `g`, never removing a vertex in `protect`.
pub fn peel_protected(g: &LeviGraph, protect: &BTreeSet<Vertex>) -> PeelTrace {
    let graph = g.graph();
    let n = graph.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut alive = vec![true; n];
    let protected: Vec<bool> = (0..n).map(|v| protect.contains(&g.vertex(v))).collect();
    let mut queue: BTreeSet<(usize, usize)> =
        (0..n).filter(|&v| degree[v] < 3 && !protected[v]).map(|v| (degree[v], v)).collect();
    let mut removed = Vec::new();
    while let Some((_, v)) = queue.pop_first() {
        alive[v] = false;
        removed.push(v);
        for &u in graph.neighbors(v) {
            if !alive[u] {
                continue;
            }
            let was = degree[u];
            degree[u] -= 1;
            if protected[u] {
                continue;
            }
            if was < 3 {
                queue.remove(&(was, u));
            }
            if degree[u] < 3 {
                queue.insert((degree[u], u));
            }
        }
    }

    let mut position = vec![usize::MAX; n];
    for (i, &v) in removed.iter().enumerate() {
        position[v] = i;
    }
    let instructions = removed
        .iter()
        .rev()
        .map(|&v| {
            let back: Vec<usize> = graph
                .neighbors(v)
                .iter()
                .filter(|&&u| position[u] > position[v])
                .map(|&u| match g.vertex(u) {
                    Placed::Point(p) | Placed::Line(p) => p,
                })
                .collect();
            DrawInstruction::for_object(g.vertex(v), &back)
                .expect("a peeled vertex has at most two later neighbours")
        })
        .collect();
    let leftover: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let leftover_edges = graph
        .edges()
        .into_iter()
        .filter(|&(u, v)| alive[u] && alive[v])
        .map(|(u, v)| (u, v - g.point_count()))
        .collect();
    PeelTrace {
        point_count: g.point_count(),
        line_count: g.line_count(),
        removed: removed.into_iter().map(|v| g.vertex(v)).collect(),
        instructions,
        leftover: leftover.into_iter().map(|v| g.vertex(v)).collect(),
        leftover_edges,
    }
}

impl PeelTrace {
    /// True when every vertex was removed.
    pub fn is_complete(&self) -> bool {
        self.leftover.is_empty()
    }

    /// Every incidence recorded by the trace: created by an instruction or
    /// internal to the leftover. Together these are all edges of the graph.
    pub fn incidences(&self) -> BTreeSet<(usize, usize)> {
        self.instructions
            .iter()
            .flat_map(DrawInstruction::incidences)
            .chain(self.leftover_edges.iter().copied())
            .collect()
    }

    /// Replays the removals on `g` and checks the trace invariants: each
    /// removed vertex had degree below three when removed, and every
    /// unprotected leftover vertex has degree at least three in the leftover.
    pub fn is_consistent_with(&self, g: &LeviGraph, protect: &BTreeSet<Vertex>) -> bool {
        let graph = g.graph();
        let n = graph.vertex_count();
        let mut alive = vec![true; n];
        let live_degree = |alive: &[bool], v: usize| {
            graph.neighbors(v).iter().filter(|&&u| alive[u]).count()
        };
        for v in &self.removed {
            let id = g.id(*v);
            if !alive[id] || protect.contains(v) || live_degree(&alive, id) >= 3 {
                return false;
            }
            alive[id] = false;
        }
        self.leftover.iter().all(|v| {
            let id = g.id(*v);
            alive[id] && (protect.contains(v) || live_degree(&alive, id) >= 3)
        }) && alive.iter().filter(|&&a| a).count() == self.leftover.len()
    }

    /// Line-oriented text dump, one record per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "peel-trace 1");
        let _ = writeln!(out, "points {}", self.point_count);
        let _ = writeln!(out, "lines {}", self.line_count);
        let list = |vs: &[Vertex]| vs.iter().map(|v| format!(" {v}")).collect::<String>();
        let _ = writeln!(out, "removed{}", list(&self.removed));
        let _ = writeln!(out, "leftover{}", list(&self.leftover));
        for &(p, l) in &self.leftover_edges {
            let _ = writeln!(out, "leftover-edge P{p} L{l}");
        }
        for ins in &self.instructions {
            let _ = writeln!(out, "{ins}");
        }
        out
    }

    /// Parses the format written by [`PeelTrace::to_text`].
    pub fn parse(text: &str) -> Result<Self, TraceParseError> {
        let mut point_count = None;
        let mut line_count = None;
        let mut removed = Vec::new();
        let mut leftover = Vec::new();
        let mut leftover_edges = Vec::new();
        let mut instructions = Vec::new();
        let mut saw_header = false;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let err = |msg: &str| TraceParseError::Syntax { line: lineno, msg: msg.to_string() };
            let mut words = raw.split_whitespace();
            let Some(head) = words.next() else { continue };
            if head.starts_with('#') {
                continue;
            }
            let rest: Vec<&str> = words.collect();
            let vertex = |w: &str| parse_vertex(w).ok_or_else(|| err(&format!("bad object {w:?}")));
            let count = || -> Result<usize, TraceParseError> {
                match rest.as_slice() {
                    [c] => c.parse().map_err(|_| err("expected a count")),
                    _ => Err(err("expected a count")),
                }
            };
            match head {
                "peel-trace" => {
                    if rest != ["1"] {
                        return Err(err("unsupported trace version"));
                    }
                    saw_header = true;
                }
                "points" => point_count = Some(count()?),
                "lines" => line_count = Some(count()?),
                "removed" => removed = rest.iter().map(|w| vertex(w)).collect::<Result<_, _>>()?,
                "leftover" => {
                    leftover = rest.iter().map(|w| vertex(w)).collect::<Result<_, _>>()?
                }
                "leftover-edge" => match rest.as_slice() {
                    [a, b] => match (vertex(a)?, vertex(b)?) {
                        (Placed::Point(p), Placed::Line(l)) => leftover_edges.push((p, l)),
                        _ => return Err(err("leftover-edge expects a point then a line")),
                    },
                    _ => return Err(err("leftover-edge expects two objects")),
                },
                kind => {
                    let objs: Vec<Vertex> =
                        rest.iter().map(|w| vertex(w)).collect::<Result<_, _>>()?;
                    instructions.push(parse_instruction(kind, &objs).ok_or_else(|| {
                        err(&format!("malformed instruction {kind:?}"))
                    })?);
                }
            }
        }
        if !saw_header {
            return Err(TraceParseError::MissingField("peel-trace"));
        }
        Ok(PeelTrace {
            point_count: point_count.ok_or(TraceParseError::MissingField("points"))?,
            line_count: line_count.ok_or(TraceParseError::MissingField("lines"))?,
            removed,
            instructions,
            leftover,
            leftover_edges,
        })
    }
}

fn parse_vertex(w: &str) -> Option<Vertex> {
    let (kind, idx) = w.split_at(1);
    let idx: usize = idx.parse().ok()?;
    match kind {
        "P" => Some(Placed::Point(idx)),
        "L" => Some(Placed::Line(idx)),
        _ => None,
    }
}

fn parse_instruction(kind: &str, objs: &[Vertex]) -> Option<DrawInstruction> {
    use Placed::{Line as L, Point as P};
    let ins = match (kind, objs) {
        ("free-point", &[P(p)]) => DrawInstruction::FreePoint(p),
        ("free-line", &[L(l)]) => DrawInstruction::FreeLine(l),
        ("point-on-line", &[P(p), L(l)]) => DrawInstruction::PointOnLine { point: p, line: l },
        ("line-through-point", &[L(l), P(p)]) => {
            DrawInstruction::LineThroughPoint { line: l, point: p }
        }
        ("point-on-two-lines", &[P(p), L(a), L(b)]) => {
            DrawInstruction::PointOnTwoLines { point: p, lines: [a, b] }
        }
        ("line-through-two-points", &[L(l), P(a), P(b)]) => {
            DrawInstruction::LineThroughTwoPoints { line: l, points: [a, b] }
        }
        _ => return None,
    };
    Some(ins)
}
