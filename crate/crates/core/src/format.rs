//! JSON file formats for structures and realizations.
//!
//! Structure file:
//!
//! ```json
//! { "version": 1, "points": ["a", "b", "c"], "lines": [["a", "b"], ["b", "c"]] }
//! ```
//!
//! A realization file names its structure by the SHA-256 digest of the
//! canonical structure file and lists integer homogeneous triples, written
//! as decimal strings, for every point and line.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::realization::Realization;
use crate::structure::{validate, IncidenceStructure, StructureError};
use crate::{ExactCoord, ExactMatrix, Matrix3, Rational};

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("realization is for structure {found}, not {expected}")]
    DigestMismatch { expected: String, found: String },
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("no line {0:?} in the structure")]
    UnknownLine(Vec<String>),
    #[error("{0:?} is listed twice")]
    Duplicate(String),
    #[error("no coordinates for {0}")]
    Missing(String),
    #[error("bad coordinate {0:?}")]
    BadCoordinate(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
struct StructureFile {
    version: u32,
    points: Vec<String>,
    lines: Vec<Vec<String>>,
}

/// Canonical structure file, newline-terminated.
pub fn structure_to_json(s: &IncidenceStructure) -> String {
    let file = StructureFile { version: VERSION, points: s.points().to_vec(), lines: s.named_lines() };
    let mut out = serde_json::to_string_pretty(&file).expect("plain data serializes");
    out.push('\n');
    out
}

/// Parses and validates a structure file; any order is accepted.
pub fn structure_from_json(text: &str) -> Result<IncidenceStructure, FormatError> {
    let file: StructureFile = serde_json::from_str(text)?;
    if file.version != VERSION {
        return Err(FormatError::Version(file.version));
    }
    Ok(validate(file.points, file.lines)?)
}

/// `sha256:<hex>` of the canonical structure file.
pub fn structure_digest(s: &IncidenceStructure) -> String {
    let hash = Sha256::digest(structure_to_json(s).as_bytes());
    format!("sha256:{hash:x}")
}

/// A realization with the provenance stored alongside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationDocument {
    pub realization: Realization,
    /// Seed that produced the coordinates, if they came from a seeded run.
    pub seed: Option<u64>,
    /// Affine chart used for drawing.
    pub chart: Option<ExactMatrix>,
}

type Triple = [String; 3];

#[derive(Serialize, Deserialize)]
struct PointEntry {
    name: String,
    coord: Triple,
}

#[derive(Serialize, Deserialize)]
struct LineEntry {
    points: Vec<String>,
    coord: Triple,
}

#[derive(Serialize, Deserialize)]
struct BrokenEntry {
    point: String,
    line: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RealizationFile {
    version: u32,
    structure: String,
    points: Vec<PointEntry>,
    lines: Vec<LineEntry>,
    broken: Option<BrokenEntry>,
    seed: Option<u64>,
    chart: Option<[Triple; 3]>,
}

fn triple(v: &[Rational; 3]) -> Triple {
    [v[0].to_string(), v[1].to_string(), v[2].to_string()]
}

fn parse_triple(t: &Triple) -> Result<[Rational; 3], FormatError> {
    let one = |s: &String| Rational::from_str(s.trim()).map_err(|_| FormatError::BadCoordinate(s.clone()));
    Ok([one(&t[0])?, one(&t[1])?, one(&t[2])?])
}

fn parse_coord(t: &Triple) -> Result<ExactCoord, FormatError> {
    ExactCoord::from_array(parse_triple(t)?).ok_or_else(|| FormatError::BadCoordinate(t.join(",")))
}

pub fn realization_to_json(s: &IncidenceStructure, doc: &RealizationDocument) -> String {
    let r = &doc.realization;
    let file = RealizationFile {
        version: VERSION,
        structure: structure_digest(s),
        points: (0..s.point_count())
            .map(|p| PointEntry { name: s.point_name(p).into(), coord: triple(r.points[p].coords()) })
            .collect(),
        lines: (0..s.line_count())
            .map(|l| LineEntry {
                points: s.line_names(l).into_iter().map(String::from).collect(),
                coord: triple(r.lines[l].coords()),
            })
            .collect(),
        broken: r.broken.map(|(p, l)| BrokenEntry {
            point: s.point_name(p).into(),
            line: s.line_names(l).into_iter().map(String::from).collect(),
        }),
        seed: doc.seed,
        chart: doc.chart.as_ref().map(|m| [triple(&m.0[0]), triple(&m.0[1]), triple(&m.0[2])]),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("plain data serializes");
    out.push('\n');
    out
}

fn line_of(s: &IncidenceStructure, names: &[String]) -> Result<usize, FormatError> {
    let mut idx: Vec<usize> = names
        .iter()
        .map(|n| s.point_index(n).ok_or_else(|| FormatError::UnknownPoint(n.clone())))
        .collect::<Result<_, _>>()?;
    idx.sort_unstable();
    s.line_index(&idx).ok_or_else(|| FormatError::UnknownLine(names.to_vec()))
}

/// Parses a realization of `s`; entries may come in any order.
pub fn realization_from_json(
    s: &IncidenceStructure,
    text: &str,
) -> Result<RealizationDocument, FormatError> {
    let file: RealizationFile = serde_json::from_str(text)?;
    if file.version != VERSION {
        return Err(FormatError::Version(file.version));
    }
    let expected = structure_digest(s);
    if file.structure != expected {
        return Err(FormatError::DigestMismatch { expected, found: file.structure });
    }
    let mut points = vec![None; s.point_count()];
    for e in &file.points {
        let p = s.point_index(&e.name).ok_or_else(|| FormatError::UnknownPoint(e.name.clone()))?;
        if points[p].replace(parse_coord(&e.coord)?).is_some() {
            return Err(FormatError::Duplicate(e.name.clone()));
        }
    }
    let mut lines = vec![None; s.line_count()];
    for e in &file.lines {
        let l = line_of(s, &e.points)?;
        if lines[l].replace(parse_coord(&e.coord)?).is_some() {
            return Err(FormatError::Duplicate(e.points.join(",")));
        }
    }
    let points = points
        .into_iter()
        .enumerate()
        .map(|(p, c)| c.ok_or_else(|| FormatError::Missing(format!("point {}", s.point_name(p)))))
        .collect::<Result<_, _>>()?;
    let lines = lines
        .into_iter()
        .enumerate()
        .map(|(l, c)| c.ok_or_else(|| FormatError::Missing(format!("line {{{}}}", s.line_names(l).join(",")))))
        .collect::<Result<_, _>>()?;
    let broken = match &file.broken {
        None => None,
        Some(b) => {
            let p = s.point_index(&b.point).ok_or_else(|| FormatError::UnknownPoint(b.point.clone()))?;
            Some((p, line_of(s, &b.line)?))
        }
    };
    let chart = match &file.chart {
        None => None,
        Some(rows) => Some(Matrix3([parse_triple(&rows[0])?, parse_triple(&rows[1])?, parse_triple(&rows[2])?])),
    };
    Ok(RealizationDocument { realization: Realization { points, lines, broken }, seed: file.seed, chart })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::tests::fano;

    #[test]
    fn structure_round_trip() {
        let f = fano();
        let text = structure_to_json(&f);
        let back = structure_from_json(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(structure_to_json(&back), text);
    }

    #[test]
    fn unsorted_input_is_canonicalized() {
        let text = r#"{"version":1,"points":["c","a","b"],"lines":[["c","b"],["b","a"]]}"#;
        let s = structure_from_json(text).unwrap();
        assert_eq!(s.points(), ["a", "b", "c"]);
        assert_eq!(s.named_lines(), vec![vec!["a", "b"], vec!["b", "c"]]);
    }

    #[test]
    fn structure_errors_surface() {
        let dup = r#"{"version":1,"points":["a","b","c"],"lines":[["a","b","c"],["a","b"]]}"#;
        assert!(matches!(structure_from_json(dup), Err(FormatError::Structure(StructureError::NonLinear(..)))));
        let v2 = r#"{"version":2,"points":[],"lines":[]}"#;
        assert_eq!(structure_from_json(v2), Err(FormatError::Version(2)));
        assert!(matches!(structure_from_json("{"), Err(FormatError::Json(_))));
    }

    #[test]
    fn digest_is_stable_hex() {
        let d = structure_digest(&fano());
        assert!(d.starts_with("sha256:"));
        assert_eq!(d.len(), 7 + 64);
        assert_eq!(d, structure_digest(&fano().relabel(|p| p.to_string()).unwrap()));
    }

    #[test]
    fn realization_round_trip_and_digest_check() {
        let f = fano();
        let r = crate::realization::steinitz_realize(&f, None, 4).unwrap();
        let doc = RealizationDocument { realization: r, seed: Some(4), chart: Some(Matrix3::identity()) };
        let text = realization_to_json(&f, &doc);
        let back = realization_from_json(&f, &text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(realization_to_json(&f, &back), text);
        let other = crate::constructions::cyclic_config(8).unwrap();
        assert!(matches!(realization_from_json(&other, &text), Err(FormatError::DigestMismatch { .. })));
    }
}
