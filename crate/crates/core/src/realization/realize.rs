use thiserror::Error;

use super::replay::{replay_with, ReplayError, SamplingConfig, Seeded};
use super::Realization;
use crate::constructions::{catalog, Catalog};
use crate::levi::decide::{cubic_pieces, judge, named_witness, Piece};
use crate::levi::{levi, peel, RealizabilityStatus, Witness};
use crate::structure::IncidenceStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("structure is not a near-configuration")]
    NotNearConfig,
    #[error("not realizable: a cut-edge splits off {}", describe(.0))]
    NotRealizable(Box<Witness>),
    #[error("realizability unknown: a cut-edge splits off {}", describe(.0))]
    Unknown(Box<Witness>),
    #[error(transparent)]
    Replay(#[from] ReplayError),
}

fn describe(w: &Witness) -> String {
    match &w.catalog_name {
        Some(name) => format!("a copy of {name}"),
        None => format!("an uncatalogued ({}_3) configuration", w.points.len()),
    }
}

/// Draws a near-configuration with the shipped catalog.
pub fn realize(s: &IncidenceStructure, seed: u64) -> Result<Realization, RealizeError> {
    realize_with(s, seed, catalog(), &SamplingConfig::default())
}

/// Draws a near-configuration. A graph that peels away completely is
/// replayed directly. Otherwise every leftover 3-regular piece must match a
/// geometric catalog entry; its coordinates are moved into place first and
/// the remaining objects are drawn around them.
pub fn realize_with(
    s: &IncidenceStructure,
    seed: u64,
    catalog: &Catalog,
    config: &SamplingConfig,
) -> Result<Realization, RealizeError> {
    if !s.is_near_config() {
        return Err(RealizeError::NotNearConfig);
    }
    let trace = peel(&levi(s));
    let seeds = if trace.is_complete() {
        Vec::new()
    } else {
        let pieces = cubic_pieces(s, catalog);
        match judge(&pieces) {
            (RealizabilityStatus::NotRealizable, Some(p)) => {
                return Err(RealizeError::NotRealizable(Box::new(named_witness(p))))
            }
            (RealizabilityStatus::Unknown, Some(p)) => {
                return Err(RealizeError::Unknown(Box::new(named_witness(p))))
            }
            _ => pieces.iter().map(|p| seed_piece(s, p)).collect(),
        }
    };
    Ok(replay_with(&trace, &seeds, seed, config)?)
}

/// Catalog coordinates of a geometric piece, moved to global indices.
fn seed_piece(s: &IncidenceStructure, piece: &Piece<'_>) -> Seeded {
    let (entry, iso) = piece.entry.as_ref().expect("judged pieces have catalog entries");
    let coords = entry.coordinates.as_ref().expect("geometric pieces carry coordinates");
    let w = &piece.witness;
    let comp = &w.component;
    let global_point = |cp: usize| {
        s.point_index(comp.point_name(cp)).expect("piece points come from the structure")
    };
    let global_line = |cl: usize| {
        let pts: Vec<usize> = comp.line(cl).iter().map(|&p| global_point(p)).collect();
        // The piece line is the structure line minus points outside the piece.
        *w.lines
            .iter()
            .find(|&&l| pts.iter().all(|&p| s.is_incident(p, l)))
            .expect("every piece line comes from a structure line")
    };
    Seeded {
        points: (0..iso.points.len())
            .map(|i| (global_point(iso.points[i]), coords.points[i].clone()))
            .collect(),
        lines: (0..iso.lines.len())
            .map(|j| (global_line(iso.lines[j]), coords.lines[j].clone()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_config, glued_compound, near_config, non_geometric_compound};
    use crate::realization::verify_realization;

    #[test]
    fn near_configs_realize() {
        for n in [9, 10, 14] {
            let s = near_config(n).unwrap();
            let r = realize(&s, 0).unwrap();
            let rep = verify_realization(&s, &r).unwrap();
            assert!(rep.is_clean(), "n = {n}: {rep:?}");
        }
    }

    #[test]
    fn compound_with_fano_is_refused() {
        let s = non_geometric_compound(14).unwrap();
        match realize(&s, 0) {
            Err(RealizeError::NotRealizable(w)) => {
                assert_eq!(w.catalog_name.as_deref(), Some("fano"))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn desargues_piece_is_seeded_from_catalog() {
        let des = catalog().get("desargues").unwrap().structure.clone();
        let s = glued_compound(&des, &cyclic_config(7).unwrap());
        assert!(!peel(&levi(&s)).is_complete());
        let r = realize(&s, 2).unwrap();
        assert!(verify_realization(&s, &r).unwrap().is_clean());
    }

    #[test]
    fn non_near_configuration_is_a_precondition_error() {
        assert_eq!(realize(&cyclic_config(9).unwrap(), 0), Err(RealizeError::NotNearConfig));
    }
}
