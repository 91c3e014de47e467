//! Explicit structures: cyclic (m₃) configurations, near-configurations,
//! compounds, the named catalog and an exhaustive search.

mod catalog;
mod search;

pub use catalog::{catalog, Catalog, CatalogEntry, GeometricStatus};
pub use search::{search_structures, SearchError, SearchOptions};

use thiserror::Error;

use crate::structure::{validate, IncidenceStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{what} needs n >= {min}, got {n}")]
    TooSmall { what: &'static str, n: usize, min: usize },
}

/// Name of the extra point in [`near_config`].
pub const INFINITY: &str = "inf";

fn cyclic_lines(m: usize) -> Vec<[usize; 3]> {
    (0..m).map(|i| [i, (i + 1) % m, (i + 3) % m]).collect()
}

/// Translates of `{0, 1, 3}` modulo `m`, on points named `0..m`.
pub fn cyclic_config(m: usize) -> Result<IncidenceStructure, ConstructionError> {
    if m < 7 {
        return Err(ConstructionError::TooSmall { what: "cyclic configuration", n: m, min: 7 });
    }
    Ok(IncidenceStructure::from_index_lines(m, cyclic_lines(m))
        .expect("translates of {0,1,3} are linear for m >= 7"))
}

/// The near-configuration on `n` points built from the cyclic configuration
/// on `n - 1` points: lines `{0,1,3}` and `{4,5,7}` become `{0,1,3,inf}`,
/// `{4,inf}` and `{5,7,inf}`.
pub fn near_config(n: usize) -> Result<IncidenceStructure, ConstructionError> {
    if n < 9 {
        return Err(ConstructionError::TooSmall { what: "near-configuration", n, min: 9 });
    }
    let m = n - 1;
    let name = |i: usize| i.to_string();
    let mut lines: Vec<Vec<String>> = cyclic_lines(m)
        .into_iter()
        .filter(|l| *l != [0, 1, 3] && *l != [4, 5, 7])
        .map(|l| l.iter().map(|&i| name(i)).collect())
        .collect();
    let inf = INFINITY.to_string();
    lines.push(vec![name(0), name(1), name(3), inf.clone()]);
    lines.push(vec![name(4), inf.clone()]);
    lines.push(vec![name(5), name(7), inf.clone()]);
    let points = (0..m).map(name).chain([inf]);
    Ok(validate(points, lines).expect("the adjusted cyclic family is linear"))
}

/// Disjoint union of `left` (points prefixed `p`) and `right` (prefixed
/// `q`), where the first point of right's first line moves onto left's
/// first line. If both are (m₃) configurations the result is a
/// near-configuration whose left part is an intact copy of `left`.
pub fn glued_compound(left: &IncidenceStructure, right: &IncidenceStructure) -> IncidenceStructure {
    let l = left.with_prefix("p");
    let r = right.with_prefix("q");
    let moved = r.point_name(r.line(0)[0]).to_string();
    let mut lines: Vec<Vec<String>> = l.named_lines();
    lines[0].push(moved.clone());
    for (i, line) in r.named_lines().into_iter().enumerate() {
        if i == 0 {
            lines.push(line.into_iter().filter(|p| *p != moved).collect());
        } else {
            lines.push(line);
        }
    }
    let points = l.points().iter().chain(r.points()).cloned();
    validate(points, lines).expect("a glued compound of linear structures is linear")
}

/// Fano plane glued to the cyclic configuration on `n - 7` points. A
/// near-configuration with no drawing in the plane.
pub fn non_geometric_compound(n: usize) -> Result<IncidenceStructure, ConstructionError> {
    if n < 14 {
        return Err(ConstructionError::TooSmall { what: "non-geometric compound", n, min: 14 });
    }
    Ok(glued_compound(&cyclic_config(7)?, &cyclic_config(n - 7)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphic;
    use crate::levi::levi;
    use crate::signature::Signature;
    use std::collections::BTreeSet;

    #[test]
    fn cyclic_seven_is_fano() {
        let c = cyclic_config(7).unwrap();
        assert!(isomorphic(&c, &crate::structure::tests::fano()).is_some());
        assert_eq!(cyclic_config(6), Err(ConstructionError::TooSmall { what: "cyclic configuration", n: 6, min: 7 }));
    }

    #[test]
    fn cyclic_nine_signature() {
        assert_eq!(cyclic_config(9).unwrap().signature().to_string(), "(9x^3, 9y^3)");
    }

    #[test]
    fn near_nine() {
        let s = near_config(9).unwrap();
        assert_eq!(s.point_count(), 9);
        assert_eq!(s.line_count(), 9);
        assert!(s.point_index(INFINITY).is_some());
        assert_eq!(s.signature().to_string(), "(9x^3, y^2+7y^3+y^4)");
        assert!(matches!(near_config(8), Err(ConstructionError::TooSmall { n: 8, min: 9, .. })));
    }

    #[test]
    fn compound_fourteen() {
        let s = non_geometric_compound(14).unwrap();
        assert!(s.is_near_config());
        let p: BTreeSet<usize> = (0..14).filter(|&i| s.point_name(i).starts_with('p')).collect();
        let restricted = s.restrict_to(&p);
        assert!(isomorphic(&restricted, &cyclic_config(7).unwrap()).is_some());
        assert_eq!(s.signature(), Signature::near(14));
        assert!(non_geometric_compound(13).is_err());
    }

    #[test]
    fn compound_four_line_edge_to_moved_point_is_a_bridge() {
        let s = non_geometric_compound(14).unwrap();
        let four = s.unique_line_of_size(4).unwrap();
        let q1 = s.line(four).iter().copied().find(|&p| s.point_name(p).starts_with('q')).unwrap();
        assert!(levi(&s).bridges().contains(&(q1, four)));
    }
}
