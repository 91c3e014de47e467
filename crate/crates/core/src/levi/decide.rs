//! The realizability test for near-configurations.
//!
//! A near-configuration is drawable exactly when no cut-edge of its Levi
//! graph splits off a 3-regular piece whose configuration is non-geometric.
//! Whether a given (m₃) configuration is geometric is looked up in the
//! catalog, so the answer has three values: a piece that the catalog does
//! not know makes the verdict `Unknown` rather than a guess.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{levi, LeviGraph};
use crate::constructions::{Catalog, CatalogEntry, GeometricStatus};
use crate::iso::Isomorphism;
use crate::realization::{realize_with, RealizeError, Realization, SamplingConfig};
use crate::structure::{validate, IncidenceStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RealizabilityStatus {
    Realizable,
    NotRealizable,
    Unknown,
}

/// A 3-regular piece of the Levi graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The cut-edge `(point, line)` separating the piece, or `None` when the
    /// piece is a whole connected component.
    pub bridge: Option<(usize, usize)>,
    /// Point indices of the piece, ascending.
    pub points: Vec<usize>,
    /// Line indices of the piece, ascending.
    pub lines: Vec<usize>,
    /// The piece as a configuration in its own right.
    pub component: IncidenceStructure,
    /// Name of the matching catalog entry.
    pub catalog_name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizabilityVerdict {
    pub status: RealizabilityStatus,
    /// Present exactly when the status is not `Realizable`.
    pub witness: Option<Witness>,
    /// Verified coordinates, present exactly when the status is `Realizable`.
    pub certificate: Option<Realization>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("structure is not a near-configuration")]
    NotNearConfig,
    #[error("structure was judged realizable but no drawing was found: {0}")]
    Uncertified(Box<RealizeError>),
}

/// A 3-regular piece together with its catalog match.
pub(crate) struct Piece<'c> {
    pub witness: Witness,
    pub entry: Option<(&'c CatalogEntry, Isomorphism)>,
}

impl Piece<'_> {
    pub fn status(&self) -> RealizabilityStatus {
        match &self.entry {
            Some((e, _)) if e.status == GeometricStatus::NonGeometric => {
                RealizabilityStatus::NotRealizable
            }
            Some((e, _)) if e.status == GeometricStatus::Geometric && e.coordinates.is_some() => {
                RealizabilityStatus::Realizable
            }
            _ => RealizabilityStatus::Unknown,
        }
    }
}

/// Every 3-regular piece split off by a cut-edge, in cut-edge order, then
/// every 3-regular connected component, by smallest vertex.
pub(crate) fn cubic_pieces<'c>(s: &IncidenceStructure, catalog: &'c Catalog) -> Vec<Piece<'c>> {
    let g = levi(s);
    let graph = g.graph();
    let n = g.point_count();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut add = |vertices: Vec<usize>, bridge: Option<(usize, usize)>, out: &mut Vec<Piece<'c>>| {
        if seen.insert(vertices.clone()) {
            let witness = witness(s, &g, &vertices, bridge);
            let entry = catalog.lookup(&witness.component);
            out.push(Piece { witness, entry });
        }
    };
    for (p, l) in g.bridges() {
        let mut cut = graph.clone();
        cut.remove_edge(p, n + l);
        for side in cut.components() {
            if !(side.contains(&p) || side.contains(&(n + l))) {
                continue;
            }
            if side.iter().all(|&v| cut.degree(v) == 3) {
                add(side, Some((p, l)), &mut out);
            }
        }
    }
    for comp in graph.components() {
        if comp.len() < g.vertex_count() && comp.iter().all(|&v| graph.degree(v) == 3) {
            add(comp, None, &mut out);
        }
    }
    out
}

fn witness(
    s: &IncidenceStructure,
    g: &LeviGraph,
    vertices: &[usize],
    bridge: Option<(usize, usize)>,
) -> Witness {
    let n = g.point_count();
    let points: Vec<usize> = vertices.iter().copied().filter(|&v| v < n).collect();
    let lines: Vec<usize> = vertices.iter().copied().filter(|&v| v >= n).map(|v| v - n).collect();
    let inside: BTreeSet<usize> = points.iter().copied().collect();
    let names: Vec<&str> = points.iter().map(|&p| s.point_name(p)).collect();
    let comp_lines: Vec<Vec<&str>> = lines
        .iter()
        .map(|&l| {
            s.line(l)
                .iter()
                .filter(|p| inside.contains(p))
                .map(|&p| s.point_name(p))
                .collect()
        })
        .collect();
    let component = validate(names, comp_lines).expect("a piece of a linear structure is linear");
    Witness { bridge, points, lines, component, catalog_name: None }
}

/// Combined status of a set of pieces and the first piece responsible.
pub(crate) fn judge<'a, 'c>(pieces: &'a [Piece<'c>]) -> (RealizabilityStatus, Option<&'a Piece<'c>>) {
    for status in [RealizabilityStatus::NotRealizable, RealizabilityStatus::Unknown] {
        if let Some(p) = pieces.iter().find(|p| p.status() == status) {
            return (status, Some(p));
        }
    }
    (RealizabilityStatus::Realizable, None)
}

pub(crate) fn named_witness(p: &Piece<'_>) -> Witness {
    let mut w = p.witness.clone();
    w.catalog_name = p.entry.as_ref().map(|(e, _)| e.name.clone());
    w
}

/// Decides whether `s` has a drawing with straight lines and no unwanted
/// incidences. A `Realizable` verdict carries coordinates found with seed 0.
pub fn decide_realizability(
    s: &IncidenceStructure,
    catalog: &Catalog,
) -> Result<RealizabilityVerdict, DecideError> {
    if !s.is_near_config() {
        return Err(DecideError::NotNearConfig);
    }
    let pieces = cubic_pieces(s, catalog);
    let (status, culprit) = judge(&pieces);
    if status != RealizabilityStatus::Realizable {
        return Ok(RealizabilityVerdict {
            status,
            witness: culprit.map(named_witness),
            certificate: None,
        });
    }
    let r = realize_with(s, 0, catalog, &SamplingConfig::default())
        .map_err(|e| DecideError::Uncertified(Box::new(e)))?;
    Ok(RealizabilityVerdict { status, witness: None, certificate: Some(r) })
}
