//! Gluing two drawings with one broken incidence each into a drawing of a
//! near-configuration.
//!
//! Drawing A misses `p3` on its line `{p1, p2, p3}` and drawing B misses
//! `q3` on `{q1, q2, q3}`. B is moved so that its line through `q1, q2`
//! lands on A's line through `p1, p2`, which becomes the size-four line
//! `{p1, p2, q1, q2}`; the two misses are repaired by the new line `p3 q3`.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::replay::{Sampler, SamplingConfig};
use super::steinitz::{steinitz_realize, SteinitzError};
use super::{verify_realization, Realization};
use crate::structure::{validate, IncidenceStructure};
use crate::{ExactCoord, ExactMatrix, Matrix3, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlignError {
    #[error("the two structures share point {0:?}")]
    NotDisjoint(String),
    #[error("drawing {0} has no broken incidence on a line of size three")]
    BrokenMismatch(char),
    #[error("drawing {0} does not realize its structure with one strict miss")]
    InvalidInput(char),
    #[error(transparent)]
    Steinitz(#[from] SteinitzError),
    #[error("no generic alignment after {0} attempts")]
    RetriesExhausted(usize),
}

/// A merged structure with its drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compound {
    pub structure: IncidenceStructure,
    pub realization: Realization,
}

struct Side<'a> {
    s: &'a IncidenceStructure,
    r: &'a Realization,
    line: usize,
    /// The two realized points of the broken line, then the missed point.
    pts: [usize; 3],
}

fn side<'a>(s: &'a IncidenceStructure, r: &'a Realization, tag: char) -> Result<Side<'a>, AlignError> {
    let (p, l) = r.broken.ok_or(AlignError::BrokenMismatch(tag))?;
    if l >= s.line_count() || s.line(l).len() != 3 || !s.is_incident(p, l) {
        return Err(AlignError::BrokenMismatch(tag));
    }
    let rep = verify_realization(s, r).map_err(|_| AlignError::InvalidInput(tag))?;
    if !rep.is_clean() || r.points[p].incident(&r.lines[l]) {
        return Err(AlignError::InvalidInput(tag));
    }
    let others: Vec<usize> = s.line(l).iter().copied().filter(|&q| q != p).collect();
    Ok(Side { s, r, line: l, pts: [others[0], others[1], p] })
}

/// Aligns drawing `b` onto drawing `a` along their broken lines.
pub fn align(
    a: (&IncidenceStructure, &Realization),
    b: (&IncidenceStructure, &Realization),
    seed: u64,
) -> Result<Compound, AlignError> {
    let names: BTreeSet<&str> = a.0.points().iter().map(String::as_str).collect();
    if let Some(shared) = b.0.points().iter().find(|p| names.contains(p.as_str())) {
        return Err(AlignError::NotDisjoint(shared.clone()));
    }
    let sa = side(a.0, a.1, 'A')?;
    let sb = side(b.0, b.1, 'B')?;
    let structure = merged_structure(&sa, &sb);

    // Frames sending the coordinate triangle to (p1, p2, p3) and (q1, q2, q3).
    // The adjugate stands in for the inverse; scale is irrelevant.
    let frame = |sd: &Side<'_>| {
        let [x, y, z] = sd.pts.map(|i| sd.r.points[i].coords().clone());
        Matrix3::from_columns(&x, &y, &z)
    };
    let ma = frame(&sa);
    let mb_inv = frame(&sb).adjugate();

    let config = SamplingConfig::default();
    let mut attempts = 0;
    for restart in 0..=config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        let mut sampler = Sampler::new(rng, &config, restart);
        for _ in 0..config.retries {
            attempts += 1;
            let n = line_fixing(&mut sampler);
            let m = ma.mul(&n).mul(&mb_inv);
            if let Some(r) = merged_realization(&sa, &sb, &m, &structure) {
                if verify_realization(&structure, &r).is_ok_and(|rep| rep.is_clean()) {
                    return Ok(Compound { structure, realization: r });
                }
            }
        }
    }
    Err(AlignError::RetriesExhausted(attempts))
}

/// A random invertible matrix mapping the line `z = 0` to itself.
fn line_fixing(sampler: &mut Sampler) -> ExactMatrix {
    use num_traits::Zero;
    loop {
        let e: Vec<Rational> = (0..7).map(|_| sampler.rational()).collect();
        let det2 = e[0].clone() * e[4].clone() - e[1].clone() * e[3].clone();
        if det2.is_zero() || e[6].is_zero() {
            continue;
        }
        let z = Rational::zero();
        return Matrix3([
            [e[0].clone(), e[1].clone(), e[2].clone()],
            [e[3].clone(), e[4].clone(), e[5].clone()],
            [z.clone(), z, e[6].clone()],
        ]);
    }
}

fn merged_structure(a: &Side<'_>, b: &Side<'_>) -> IncidenceStructure {
    let name_a = |p: usize| a.s.point_name(p).to_string();
    let name_b = |p: usize| b.s.point_name(p).to_string();
    let mut points: Vec<String> = a.s.points().to_vec();
    points.extend(b.s.points().iter().cloned());
    let mut lines: Vec<Vec<String>> = Vec::new();
    for l in (0..a.s.line_count()).filter(|&l| l != a.line) {
        lines.push(a.s.line(l).iter().map(|&p| name_a(p)).collect());
    }
    for l in (0..b.s.line_count()).filter(|&l| l != b.line) {
        lines.push(b.s.line(l).iter().map(|&p| name_b(p)).collect());
    }
    lines.push(vec![name_a(a.pts[0]), name_a(a.pts[1]), name_b(b.pts[0]), name_b(b.pts[1])]);
    lines.push(vec![name_a(a.pts[2]), name_b(b.pts[2])]);
    validate(points, lines).expect("gluing along broken lines keeps the structure linear")
}

fn merged_realization(
    a: &Side<'_>,
    b: &Side<'_>,
    m: &ExactMatrix,
    merged: &IncidenceStructure,
) -> Option<Realization> {
    let mut points: Vec<Option<ExactCoord>> = vec![None; merged.point_count()];
    for p in 0..a.s.point_count() {
        points[merged.point_index(a.s.point_name(p))?] = Some(a.r.points[p].clone());
    }
    for p in 0..b.s.point_count() {
        points[merged.point_index(b.s.point_name(p))?] = Some(m.map_point(&b.r.points[p])?);
    }
    let points: Vec<ExactCoord> = points.into_iter().collect::<Option<_>>()?;
    let mut lines: Vec<Option<ExactCoord>> = vec![None; merged.line_count()];
    let mut put = |s: &IncidenceStructure, l: usize, c: ExactCoord| -> Option<()> {
        let idx: Vec<usize> = s
            .line(l)
            .iter()
            .map(|&p| merged.point_index(s.point_name(p)))
            .collect::<Option<_>>()?;
        let mut idx = idx;
        idx.sort_unstable();
        lines[merged.line_index(&idx)?] = Some(c);
        Some(())
    };
    for l in (0..a.s.line_count()).filter(|&l| l != a.line) {
        put(a.s, l, a.r.lines[l].clone())?;
    }
    for l in (0..b.s.line_count()).filter(|&l| l != b.line) {
        put(b.s, l, m.map_line(&b.r.lines[l])?)?;
    }
    let idx = |s: &IncidenceStructure, p: usize| merged.point_index(s.point_name(p));
    let mut four = vec![
        idx(a.s, a.pts[0])?,
        idx(a.s, a.pts[1])?,
        idx(b.s, b.pts[0])?,
        idx(b.s, b.pts[1])?,
    ];
    four.sort_unstable();
    let mut two = vec![idx(a.s, a.pts[2])?, idx(b.s, b.pts[2])?];
    two.sort_unstable();
    let four_line = merged.line_index(&four)?;
    let two_line = merged.line_index(&two)?;
    lines[four_line] = Some(a.r.lines[a.line].clone());
    lines[two_line] = points[two[0]].cross(&points[two[1]]);
    Some(Realization { points, lines: lines.into_iter().collect::<Option<_>>()?, broken: None })
}

/// Steinitz-draws both configurations and aligns them, trying broken
/// incidences in canonical order (line by line, points in line order, the
/// choice for `a` varying slowest) until an alignment succeeds.
pub fn compound_realization(
    a: &IncidenceStructure,
    b: &IncidenceStructure,
    seed: u64,
) -> Result<Compound, AlignError> {
    let choices = |s: &IncidenceStructure| -> Vec<(usize, usize)> {
        (0..s.line_count()).flat_map(|l| s.line(l).iter().map(move |&p| (p, l))).collect()
    };
    let mut last = None;
    for ca in choices(a) {
        let ra = steinitz_realize(a, Some(ca), seed)?;
        for cb in choices(b) {
            let rb = steinitz_realize(b, Some(cb), seed)?;
            match align((a, &ra), (b, &rb), seed) {
                Ok(c) => return Ok(c),
                Err(e @ AlignError::RetriesExhausted(_)) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
    }
    Err(last.unwrap_or(AlignError::RetriesExhausted(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::tests::fano;

    #[test]
    fn two_fanos_give_a_fourteen_point_near_configuration() {
        let a = fano().with_prefix("p");
        let b = fano().with_prefix("q");
        let c = compound_realization(&a, &b, 0).unwrap();
        assert_eq!(c.structure.point_count(), 14);
        assert!(c.structure.is_near_config());
        assert!(verify_realization(&c.structure, &c.realization).unwrap().is_clean());
        assert_eq!(c.realization.broken, None);
    }

    #[test]
    fn self_alignment_is_rejected() {
        let f = fano();
        let r = steinitz_realize(&f, None, 0).unwrap();
        assert_eq!(align((&f, &r), (&f, &r), 0), Err(AlignError::NotDisjoint("0".into())));
    }

    #[test]
    fn unbroken_input_is_rejected() {
        let a = fano().with_prefix("p");
        let b = fano().with_prefix("q");
        let ra = steinitz_realize(&a, None, 0).unwrap();
        let mut rb = steinitz_realize(&b, None, 0).unwrap();
        rb.broken = None;
        assert_eq!(align((&a, &ra), (&b, &rb), 0), Err(AlignError::BrokenMismatch('B')));
    }
}
