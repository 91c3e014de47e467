use thiserror::Error;

use super::replay::{replay_with, ReplayError, SamplingConfig};
use super::Realization;
use crate::levi::{levi, peel};
use crate::structure::IncidenceStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinitzError {
    #[error("structure is not a (m_3) configuration")]
    NotConfiguration,
    #[error("structure is disconnected")]
    Disconnected,
    #[error("point {0} is not on line {1}")]
    NotIncidence(usize, usize),
    #[error(transparent)]
    Replay(#[from] ReplayError),
}

/// Draws a connected (m₃) configuration with every incidence except
/// `broken`, which ends up strictly missed. The default broken incidence is
/// the first point of the first line.
pub fn steinitz_realize(
    c: &IncidenceStructure,
    broken: Option<(usize, usize)>,
    seed: u64,
) -> Result<Realization, SteinitzError> {
    if !c.is_configuration(3, 3) || c.point_count() != c.line_count() {
        return Err(SteinitzError::NotConfiguration);
    }
    let g = levi(c);
    if !g.is_connected() {
        return Err(SteinitzError::Disconnected);
    }
    let (p, l) = broken.unwrap_or((c.line(0)[0], 0));
    let cut = g.without_incidence(p, l).ok_or(SteinitzError::NotIncidence(p, l))?;
    // A connected cubic graph minus one edge peels completely, and the replay
    // forces the missing edge to be a strict non-incidence.
    let trace = peel(&cut);
    debug_assert!(trace.is_complete());
    let mut r = replay_with(&trace, &[], seed, &SamplingConfig::default())?;
    r.broken = Some((p, l));
    Ok(r)
}
