use std::fmt;

/// One step of a Steinitz-style drawing. Object references are point and
/// line indices of the structure being drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DrawInstruction {
    FreePoint(usize),
    FreeLine(usize),
    PointOnLine { point: usize, line: usize },
    LineThroughPoint { line: usize, point: usize },
    PointOnTwoLines { point: usize, lines: [usize; 2] },
    LineThroughTwoPoints { line: usize, points: [usize; 2] },
}

/// The object an instruction places.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Placed {
    Point(usize),
    Line(usize),
}

impl DrawInstruction {
    /// Instruction that places `target` given its already placed neighbours.
    /// Returns `None` when more than two neighbours are given.
    pub fn for_object(target: Placed, placed_neighbours: &[usize]) -> Option<Self> {
        use DrawInstruction::*;
        Some(match (target, placed_neighbours) {
            (Placed::Point(p), []) => FreePoint(p),
            (Placed::Line(l), []) => FreeLine(l),
            (Placed::Point(p), &[l]) => PointOnLine { point: p, line: l },
            (Placed::Line(l), &[p]) => LineThroughPoint { line: l, point: p },
            (Placed::Point(p), &[a, b]) => PointOnTwoLines { point: p, lines: [a, b] },
            (Placed::Line(l), &[a, b]) => LineThroughTwoPoints { line: l, points: [a, b] },
            _ => return None,
        })
    }

    pub fn target(&self) -> Placed {
        use DrawInstruction::*;
        match *self {
            FreePoint(p) | PointOnLine { point: p, .. } | PointOnTwoLines { point: p, .. } => {
                Placed::Point(p)
            }
            FreeLine(l) | LineThroughPoint { line: l, .. } | LineThroughTwoPoints { line: l, .. } => {
                Placed::Line(l)
            }
        }
    }

    /// Indices of the already placed objects this instruction depends on.
    pub fn depends_on(&self) -> Vec<usize> {
        use DrawInstruction::*;
        match *self {
            FreePoint(_) | FreeLine(_) => vec![],
            PointOnLine { line: x, .. } | LineThroughPoint { point: x, .. } => vec![x],
            PointOnTwoLines { lines: xs, .. } | LineThroughTwoPoints { points: xs, .. } => {
                xs.to_vec()
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        use DrawInstruction::*;
        match self {
            FreePoint(_) => "free-point",
            FreeLine(_) => "free-line",
            PointOnLine { .. } => "point-on-line",
            LineThroughPoint { .. } => "line-through-point",
            PointOnTwoLines { .. } => "point-on-two-lines",
            LineThroughTwoPoints { .. } => "line-through-two-points",
        }
    }

    /// Incidences `(point, line)` this instruction creates.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        match self.target() {
            Placed::Point(p) => self.depends_on().into_iter().map(|l| (p, l)).collect(),
            Placed::Line(l) => self.depends_on().into_iter().map(|p| (p, l)).collect(),
        }
    }
}

impl fmt::Display for Placed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Placed::Point(p) => write!(f, "P{p}"),
            Placed::Line(l) => write!(f, "L{l}"),
        }
    }
}

impl fmt::Display for DrawInstruction {
    /// `point-on-two-lines P4 L1 L7`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind(), self.target())?;
        let dep = |x: usize| match self.target() {
            Placed::Point(_) => Placed::Line(x),
            Placed::Line(_) => Placed::Point(x),
        };
        for x in self.depends_on() {
            write!(f, " {}", dep(x))?;
        }
        Ok(())
    }
}
