//! Point-line incidence structures.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::signature::Signature;

/// Reasons a raw point/line description is not an incidence structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("invalid point name {0:?}: names must be nonempty and free of whitespace")]
    InvalidName(String),
    #[error("point {0:?} is listed twice")]
    DuplicatePoint(String),
    #[error("line {line:?} lists point {point:?} more than once")]
    RepeatedPoint { line: Vec<String>, point: String },
    #[error("line {0:?} has fewer than two points")]
    LineTooSmall(Vec<String>),
    #[error("line {line:?} uses unknown point {point:?}")]
    UnknownPoint { line: Vec<String>, point: String },
    #[error("line {0:?} appears twice")]
    DuplicateLine(Vec<String>),
    #[error("points {0:?} and {1:?} lie together on more than one line")]
    NonLinear(String, String),
}

/// Failure to form the dual of a structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("points {0:?} and {1:?} lie on exactly the same lines, so the dual repeats a line")]
    DualNotSimple(String, String),
    #[error("point {0:?} lies on fewer than two lines, so its dual line is too small")]
    DegreeTooSmall(String),
}

/// A finite linear point-line incidence structure.
///
/// Points are opaque names kept in lexicographic order. Each line is the
/// sorted list of its point indices and the line list itself is sorted, so
/// two structures are equal exactly when they are syntactically equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IncidenceStructure {
    points: Vec<String>,
    lines: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
}

/// Checks a raw description and returns it in canonical order.
pub fn validate<P, L, S>(points: P, lines: L) -> Result<IncidenceStructure, StructureError>
where
    P: IntoIterator<Item = S>,
    L: IntoIterator,
    L::Item: IntoIterator<Item = S>,
    S: Into<String>,
{
    let raw_points: Vec<String> = points.into_iter().map(Into::into).collect();
    for p in &raw_points {
        if p.is_empty() || p.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(StructureError::InvalidName(p.clone()));
        }
    }
    let mut sorted = raw_points;
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(StructureError::DuplicatePoint(w[0].clone()));
    }
    let index: HashMap<&str, usize> =
        sorted.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();

    let mut canon: Vec<Vec<usize>> = Vec::new();
    for raw in lines_iter(lines) {
        let mut seen = BTreeSet::new();
        for p in &raw {
            if !seen.insert(p.as_str()) {
                return Err(StructureError::RepeatedPoint { line: raw.clone(), point: p.clone() });
            }
        }
        if raw.len() < 2 {
            return Err(StructureError::LineTooSmall(raw));
        }
        let mut idx = Vec::with_capacity(raw.len());
        for p in &raw {
            match index.get(p.as_str()) {
                Some(&i) => idx.push(i),
                None => {
                    return Err(StructureError::UnknownPoint { line: raw.clone(), point: p.clone() })
                }
            }
        }
        idx.sort_unstable();
        canon.push(idx);
    }
    canon.sort();
    let names = |l: &[usize]| l.iter().map(|&i| sorted[i].clone()).collect::<Vec<_>>();
    if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
        return Err(StructureError::DuplicateLine(names(&w[0])));
    }
    let mut covered: HashMap<(usize, usize), usize> = HashMap::new();
    for (li, l) in canon.iter().enumerate() {
        for (a, &p) in l.iter().enumerate() {
            for &q in &l[a + 1..] {
                if covered.insert((p, q), li).is_some() {
                    return Err(StructureError::NonLinear(sorted[p].clone(), sorted[q].clone()));
                }
            }
        }
    }
    Ok(IncidenceStructure::from_parts(sorted, canon))
}

fn lines_iter<L, S>(lines: L) -> impl Iterator<Item = Vec<String>>
where
    L: IntoIterator,
    L::Item: IntoIterator<Item = S>,
    S: Into<String>,
{
    lines.into_iter().map(|l| l.into_iter().map(Into::into).collect())
}

impl IncidenceStructure {
    /// Assumes `points` sorted and `lines` canonical.
    fn from_parts(points: Vec<String>, lines: Vec<Vec<usize>>) -> Self {
        let mut point_lines = vec![Vec::new(); points.len()];
        for (li, l) in lines.iter().enumerate() {
            for &p in l {
                point_lines[p].push(li);
            }
        }
        IncidenceStructure { points, lines, point_lines }
    }

    /// Structure on points named by their decimal index.
    pub fn from_index_lines<L>(point_count: usize, lines: L) -> Result<Self, StructureError>
    where
        L: IntoIterator,
        L::Item: IntoIterator<Item = usize>,
    {
        validate(
            (0..point_count).map(|i| i.to_string()),
            lines.into_iter().map(|l| l.into_iter().map(|i| i.to_string()).collect::<Vec<_>>()),
        )
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, p: usize) -> &str {
        &self.points[p]
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_str().cmp(name)).ok()
    }

    /// Lines as sorted lists of point indices.
    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line(&self, l: usize) -> &[usize] {
        &self.lines[l]
    }

    pub fn line_names(&self, l: usize) -> Vec<&str> {
        self.lines[l].iter().map(|&p| self.points[p].as_str()).collect()
    }

    /// Index of the line with exactly these points.
    pub fn line_index(&self, points: &[usize]) -> Option<usize> {
        let mut key = points.to_vec();
        key.sort_unstable();
        self.lines.binary_search(&key).ok()
    }

    /// Lines through `p`, in increasing order.
    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    pub fn degree(&self, p: usize) -> usize {
        self.point_lines[p].len()
    }

    pub fn is_incident(&self, p: usize, l: usize) -> bool {
        self.lines[l].binary_search(&p).is_ok()
    }

    pub fn incidence_count(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }

    /// All `(point, line)` incidences ordered by line, then point.
    pub fn incidences(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.lines
            .iter()
            .enumerate()
            .flat_map(|(l, pts)| pts.iter().map(move |&p| (p, l)))
    }

    pub fn signature(&self) -> Signature {
        Signature::of(self)
    }

    /// Signature `(n x^3, y^2 + (n-2) y^3 + y^4)` with `n` the point count.
    pub fn is_near_config(&self) -> bool {
        let n = self.point_count();
        n >= 2 && self.signature() == Signature::near(n)
    }

    /// All points of degree `r` and all lines of size `k`.
    pub fn is_configuration(&self, r: usize, k: usize) -> bool {
        (0..self.point_count()).all(|p| self.degree(p) == r)
            && self.lines.iter().all(|l| l.len() == k)
    }

    /// Points and lines exchanged. Dual points are named `L<index>` with the
    /// index zero-padded so the canonical order matches this line order.
    pub fn dual(&self) -> Result<IncidenceStructure, DualError> {
        let width = self.line_count().saturating_sub(1).to_string().len();
        let names: Vec<String> =
            (0..self.line_count()).map(|l| format!("L{l:0width$}")).collect();
        // In a linear structure identical pencils only occur at degree <= 1.
        let mut by_pencil: BTreeMap<&[usize], usize> = BTreeMap::new();
        for p in 0..self.point_count() {
            if let Some(&q) = by_pencil.get(self.lines_through(p)) {
                return Err(DualError::DualNotSimple(self.points[q].clone(), self.points[p].clone()));
            }
            by_pencil.insert(self.lines_through(p), p);
        }
        if let Some(p) = (0..self.point_count()).find(|&p| self.degree(p) < 2) {
            return Err(DualError::DegreeTooSmall(self.points[p].clone()));
        }
        let dual_lines: Vec<Vec<String>> = (0..self.point_count())
            .map(|p| self.lines_through(p).iter().map(|&l| names[l].clone()).collect())
            .collect();
        // A linear structure has a linear dual: two lines share at most one point.
        Ok(validate(names, dual_lines).expect("dual of a linear structure is linear"))
    }

    /// Same structure with every point name passed through `rename`.
    pub fn relabel<F>(&self, mut rename: F) -> Result<IncidenceStructure, StructureError>
    where
        F: FnMut(&str) -> String,
    {
        let names: Vec<String> = self.points.iter().map(|p| rename(p)).collect();
        let lines: Vec<Vec<String>> = self
            .lines
            .iter()
            .map(|l| l.iter().map(|&p| names[p].clone()).collect())
            .collect();
        validate(names, lines)
    }

    pub fn with_prefix(&self, prefix: &str) -> IncidenceStructure {
        self.relabel(|p| format!("{prefix}{p}"))
            .expect("prefixing preserves validity")
    }

    /// Substructure on `points`, keeping the lines that still have two points.
    pub fn restrict_to(&self, points: &BTreeSet<usize>) -> IncidenceStructure {
        let names: Vec<String> = points.iter().map(|&p| self.points[p].clone()).collect();
        let lines: Vec<Vec<String>> = self
            .lines
            .iter()
            .map(|l| {
                l.iter()
                    .filter(|p| points.contains(p))
                    .map(|&p| self.points[p].clone())
                    .collect::<Vec<_>>()
            })
            .filter(|l| l.len() >= 2)
            .collect();
        validate(names, lines).expect("restriction of a linear structure is linear")
    }

    /// Rebuilds from point names and lines given by point names.
    pub fn from_named_lines(
        points: Vec<String>,
        lines: Vec<Vec<String>>,
    ) -> Result<Self, StructureError> {
        validate(points, lines)
    }

    /// Lines as lists of point names, in canonical order.
    pub fn named_lines(&self) -> Vec<Vec<String>> {
        (0..self.line_count())
            .map(|l| self.line_names(l).into_iter().map(String::from).collect())
            .collect()
    }

    /// Index of the unique line of size `k`, if exactly one exists.
    pub fn unique_line_of_size(&self, k: usize) -> Option<usize> {
        let mut it = (0..self.line_count()).filter(|&l| self.lines[l].len() == k);
        match (it.next(), it.next()) {
            (Some(l), None) => Some(l),
            _ => None,
        }
    }
}

impl fmt::Debug for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IncidenceStructure")
            .field("points", &self.points)
            .field("lines", &self.named_lines())
            .finish()
    }
}

impl fmt::Display for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} points, {} lines:", self.point_count(), self.line_count())?;
        for l in 0..self.line_count() {
            write!(f, " {{{}}}", self.line_names(l).join(","))?;
        }
        Ok(())
    }
}
