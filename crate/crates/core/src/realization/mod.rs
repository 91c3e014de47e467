//! Exact projective realizations: replaying peel traces, Steinitz drawings,
//! alignment of two drawings, verification and rendering.

mod affine;
mod align;
mod instruction;
mod realize;
mod replay;
mod steinitz;
mod svg;

pub use affine::{to_affine, AffineChart};
pub use align::{align, compound_realization, AlignError, Compound};
pub use instruction::{DrawInstruction, Placed};
pub use realize::{realize, realize_with, RealizeError};
pub use replay::{replay, replay_with, ReplayError, SamplingConfig, Seeded};
pub use steinitz::{steinitz_realize, SteinitzError};
pub use svg::{render_svg, SvgOptions};

use std::fmt;

use thiserror::Error;

use crate::structure::IncidenceStructure;
use crate::ExactCoord;

/// Coordinates for every point and line of one structure, indexed like the
/// structure itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Realization {
    pub points: Vec<ExactCoord>,
    pub lines: Vec<ExactCoord>,
    /// A `(point, line)` incidence that the drawing is allowed to miss.
    pub broken: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("structure has {expected_points} points and {expected_lines} lines but the realization gives {points} and {lines}")]
    MissingCoordinates {
        expected_points: usize,
        expected_lines: usize,
        points: usize,
        lines: usize,
    },
    #[error("broken incidence ({0}, {1}) is not an incidence of the structure")]
    BrokenNotIncidence(usize, usize),
}

/// Every way a realization fails to represent its structure. All pairs are
/// index pairs in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// Incidences `(point, line)` of the structure that the coordinates miss.
    pub missed: Vec<(usize, usize)>,
    /// Non-incident `(point, line)` pairs that the coordinates make incident.
    pub unwanted: Vec<(usize, usize)>,
    pub coincident_points: Vec<(usize, usize)>,
    pub coincident_lines: Vec<(usize, usize)>,
    /// Incidences of the structure represented exactly.
    pub realized: usize,
    /// Incidences of the structure.
    pub total: usize,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.missed.is_empty()
            && self.unwanted.is_empty()
            && self.coincident_points.is_empty()
            && self.coincident_lines.is_empty()
    }

    /// Human-readable itemised report.
    pub fn describe(&self, s: &IncidenceStructure) -> String {
        let line = |l: usize| format!("{{{}}}", s.line_names(l).join(","));
        let mut out = format!(
            "{} missed / {} unwanted / {} coincident points / {} coincident lines ({} of {} incidences realized)\n",
            self.missed.len(),
            self.unwanted.len(),
            self.coincident_points.len(),
            self.coincident_lines.len(),
            self.realized,
            self.total,
        );
        for &(p, l) in &self.missed {
            out += &format!("missed: {} on {}\n", s.point_name(p), line(l));
        }
        for &(p, l) in &self.unwanted {
            out += &format!("unwanted: {} on {}\n", s.point_name(p), line(l));
        }
        for &(a, b) in &self.coincident_points {
            out += &format!("coincident points: {} {}\n", s.point_name(a), s.point_name(b));
        }
        for &(a, b) in &self.coincident_lines {
            out += &format!("coincident lines: {} {}\n", line(a), line(b));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} missed / {} unwanted", self.missed.len(), self.unwanted.len())?;
        if !self.coincident_points.is_empty() || !self.coincident_lines.is_empty() {
            write!(
                f,
                " / {} coincident points / {} coincident lines",
                self.coincident_points.len(),
                self.coincident_lines.len()
            )?;
        }
        Ok(())
    }
}

/// Exact check of `r` against `s`. The broken incidence, if any, is neither
/// required nor reported as unwanted.
pub fn verify_realization(
    s: &IncidenceStructure,
    r: &Realization,
) -> Result<Report, VerifyError> {
    if r.points.len() != s.point_count() || r.lines.len() != s.line_count() {
        return Err(VerifyError::MissingCoordinates {
            expected_points: s.point_count(),
            expected_lines: s.line_count(),
            points: r.points.len(),
            lines: r.lines.len(),
        });
    }
    if let Some((p, l)) = r.broken {
        if p >= s.point_count() || l >= s.line_count() || !s.is_incident(p, l) {
            return Err(VerifyError::BrokenNotIncidence(p, l));
        }
    }
    let mut report = Report { total: s.incidence_count(), ..Report::default() };
    for p in 0..s.point_count() {
        for l in 0..s.line_count() {
            let on = r.points[p].incident(&r.lines[l]);
            let want = s.is_incident(p, l);
            if want && on {
                report.realized += 1;
            }
            if r.broken == Some((p, l)) {
                continue;
            }
            match (want, on) {
                (true, false) => report.missed.push((p, l)),
                (false, true) => report.unwanted.push((p, l)),
                _ => {}
            }
        }
    }
    report.coincident_points = coincident(&r.points);
    report.coincident_lines = coincident(&r.lines);
    Ok(report)
}

fn coincident(v: &[ExactCoord]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].cmp(&v[b]).then(a.cmp(&b)));
    let mut out = Vec::new();
    for w in order.windows(2) {
        if v[w[0]] == v[w[1]] {
            out.push((w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    out.sort_unstable();
    out
}

impl Realization {
    /// Applies an invertible point transformation to every coordinate.
    pub fn transformed(&self, m: &crate::ExactMatrix) -> Option<Realization> {
        if !m.is_invertible() {
            return None;
        }
        Some(Realization {
            points: self.points.iter().map(|p| m.map_point(p)).collect::<Option<_>>()?,
            lines: self.lines.iter().map(|l| m.map_line(l)).collect::<Option<_>>()?,
            broken: self.broken,
        })
    }

    /// Largest bit length of any coordinate entry.
    pub fn max_bits(&self) -> u64 {
        self.points
            .iter()
            .chain(&self.lines)
            .flat_map(|c| c.coords().iter())
            .map(|x| x.numer().bits().max(x.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::validate;
    use crate::Rational;

    fn pt(x: i64, y: i64) -> ExactCoord {
        ExactCoord::affine(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    fn triangle() -> (IncidenceStructure, Realization) {
        let s = validate(["a", "b", "c"], [["a", "b"], ["a", "c"], ["b", "c"]]).unwrap();
        let (a, b, c) = (pt(0, 0), pt(1, 0), pt(0, 1));
        let lines = vec![a.cross(&b).unwrap(), a.cross(&c).unwrap(), b.cross(&c).unwrap()];
        (s, Realization { points: vec![a, b, c], lines, broken: None })
    }

    #[test]
    fn triangle_verifies() {
        let (s, r) = triangle();
        let rep = verify_realization(&s, &r).unwrap();
        assert!(rep.is_clean(), "{rep:?}");
        assert_eq!((rep.realized, rep.total), (6, 6));
    }

    #[test]
    fn collapsed_point_is_reported() {
        let (s, mut r) = triangle();
        r.points[2] = pt(2, 0);
        let rep = verify_realization(&s, &r).unwrap();
        assert_eq!(rep.missed, vec![(2, 1), (2, 2)]);
        assert_eq!(rep.unwanted, vec![(2, 0)]);
        r.points[2] = pt(0, 0);
        let rep = verify_realization(&s, &r).unwrap();
        assert_eq!(rep.coincident_points, vec![(0, 2)]);
    }

    #[test]
    fn broken_pair_is_exempt() {
        let (s, mut r) = triangle();
        r.lines[0] = pt(0, 0).cross(&pt(5, 7)).unwrap();
        r.broken = Some((1, 0));
        let rep = verify_realization(&s, &r).unwrap();
        assert!(rep.is_clean(), "{rep:?}");
        assert_eq!(rep.realized, 5);
        r.broken = Some((2, 0));
        assert_eq!(verify_realization(&s, &r), Err(VerifyError::BrokenNotIncidence(2, 0)));
    }

    #[test]
    fn missing_coordinates() {
        let (s, mut r) = triangle();
        r.lines.pop();
        assert!(matches!(
            verify_realization(&s, &r),
            Err(VerifyError::MissingCoordinates { lines: 2, .. })
        ));
    }
}
