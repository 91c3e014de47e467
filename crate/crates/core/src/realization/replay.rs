//! Replays draw instructions into exact coordinates.
//!
//! Every placement is checked against every object already on the canvas:
//! it must be incident exactly with the objects the Levi graph says it is
//! incident with, and must not coincide with another object of its kind.
//! Free choices are resampled until the checks pass. A placement with no
//! freedom left (an intersection or a join) that fails restarts the run.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{DrawInstruction, Placed, Realization};
use crate::levi::PeelTrace;
use crate::{ExactCoord, ExactMatrix, Rational};

/// Bounds for the random rationals used as free choices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    /// Numerators are drawn from `-numerator_bound..=numerator_bound`.
    pub numerator_bound: i64,
    /// Denominators are drawn from `1..=denominator_bound`.
    pub denominator_bound: i64,
    /// Both bounds are multiplied by this factor on every restart.
    pub growth: i64,
    /// Neither bound grows past this.
    pub max_bound: i64,
    /// Samples tried per instruction before the run restarts.
    pub retries: usize,
    /// Whole-run restarts before giving up.
    pub restarts: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            numerator_bound: 100,
            denominator_bound: 10,
            growth: 10,
            max_bound: 1_000_000_000_000_000,
            retries: 100,
            restarts: 20,
        }
    }
}

/// Objects with known coordinates placed before the instructions run. Each
/// group is moved by its own random projective transformation per run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Seeded {
    pub points: Vec<(usize, ExactCoord)>,
    pub lines: Vec<(usize, ExactCoord)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("trace leaves {0} vertices unpeeled; replay needs a complete trace or seeded coordinates")]
    LeftoverNotEmpty(usize),
    #[error("seeded objects do not match the trace leftover: {0}")]
    SeedMismatch(String),
    #[error("instruction {0} refers to an object that is not placed yet")]
    Malformed(String),
    #[error("no admissible coordinates after {restarts} restarts")]
    RetriesExhausted { restarts: usize },
}

/// Replays a complete trace.
pub fn replay(trace: &PeelTrace, seed: u64) -> Result<Realization, ReplayError> {
    if !trace.is_complete() {
        return Err(ReplayError::LeftoverNotEmpty(trace.leftover.len()));
    }
    replay_with(trace, &[], seed, &SamplingConfig::default())
}

/// Replays `trace` after placing `seeds`, which must cover the leftover
/// exactly. The required incidences are all edges recorded in the trace.
pub fn replay_with(
    trace: &PeelTrace,
    seeds: &[Seeded],
    seed: u64,
    config: &SamplingConfig,
) -> Result<Realization, ReplayError> {
    check_cover(trace, seeds)?;
    let want = trace.incidences();
    for attempt in 0..=config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let mut sampler = Sampler::new(rng, config, attempt);
        let mut canvas = Canvas::new(trace.point_count, trace.line_count, &want);
        if run(&mut canvas, &mut sampler, trace, seeds, config)? {
            return Ok(canvas.finish());
        }
    }
    Err(ReplayError::RetriesExhausted { restarts: config.restarts })
}

fn check_cover(trace: &PeelTrace, seeds: &[Seeded]) -> Result<(), ReplayError> {
    let mut seeded: Vec<Placed> = Vec::new();
    for g in seeds {
        seeded.extend(g.points.iter().map(|(p, _)| Placed::Point(*p)));
        seeded.extend(g.lines.iter().map(|(l, _)| Placed::Line(*l)));
    }
    seeded.sort_unstable();
    let before = seeded.len();
    seeded.dedup();
    if seeded.len() != before {
        return Err(ReplayError::SeedMismatch("an object is seeded twice".into()));
    }
    let mut leftover = trace.leftover.clone();
    leftover.sort_unstable();
    if seeded != leftover {
        return Err(ReplayError::SeedMismatch(format!(
            "{} seeded objects for {} leftover vertices",
            seeded.len(),
            leftover.len()
        )));
    }
    Ok(())
}

/// Returns `Ok(false)` when this run hit a dead end and should restart.
fn run(
    canvas: &mut Canvas<'_>,
    sampler: &mut Sampler,
    trace: &PeelTrace,
    seeds: &[Seeded],
    config: &SamplingConfig,
) -> Result<bool, ReplayError> {
    for group in seeds {
        let mut placed = false;
        for _ in 0..config.retries {
            let m = sampler.matrix();
            let moved: Option<Vec<(Placed, ExactCoord)>> = group
                .points
                .iter()
                .map(|(p, c)| m.map_point(c).map(|c| (Placed::Point(*p), c)))
                .chain(group.lines.iter().map(|(l, c)| m.map_line(c).map(|c| (Placed::Line(*l), c))))
                .collect();
            let Some(moved) = moved else { continue };
            if canvas.try_place_all(&moved) {
                placed = true;
                break;
            }
        }
        if !placed {
            return Ok(false);
        }
    }
    for ins in &trace.instructions {
        for dep in ins.depends_on() {
            let ready = match ins.target() {
                Placed::Point(_) => canvas.lines.get(dep).is_some_and(Option::is_some),
                Placed::Line(_) => canvas.points.get(dep).is_some_and(Option::is_some),
            };
            if !ready {
                return Err(ReplayError::Malformed(ins.to_string()));
            }
        }
        if !place(canvas, sampler, ins, config.retries) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn place(canvas: &mut Canvas<'_>, sampler: &mut Sampler, ins: &DrawInstruction, retries: usize) -> bool {
    use DrawInstruction::*;
    let target = ins.target();
    let (forced, tries) = match ins {
        PointOnTwoLines { .. } | LineThroughTwoPoints { .. } => (true, 1),
        _ => (false, retries),
    };
    for _ in 0..tries {
        let candidate = match *ins {
            FreePoint(_) => Some(sampler.affine_point()),
            FreeLine(_) => sampler.line(),
            PointOnLine { line, .. } => Some(sampler.point_on(canvas.line(line))),
            LineThroughPoint { point, .. } => sampler.affine_point().cross(canvas.point(point)),
            PointOnTwoLines { lines: [a, b], .. } => canvas.line(a).cross(canvas.line(b)),
            LineThroughTwoPoints { points: [a, b], .. } => canvas.point(a).cross(canvas.point(b)),
        };
        if let Some(c) = candidate {
            if canvas.try_place(target, c) {
                return true;
            }
        }
        if forced {
            break;
        }
    }
    false
}

struct Canvas<'a> {
    points: Vec<Option<ExactCoord>>,
    lines: Vec<Option<ExactCoord>>,
    placed_points: Vec<usize>,
    placed_lines: Vec<usize>,
    want: &'a BTreeSet<(usize, usize)>,
}

impl<'a> Canvas<'a> {
    fn new(point_count: usize, line_count: usize, want: &'a BTreeSet<(usize, usize)>) -> Self {
        Canvas {
            points: vec![None; point_count],
            lines: vec![None; line_count],
            placed_points: Vec::new(),
            placed_lines: Vec::new(),
            want,
        }
    }

    fn point(&self, p: usize) -> &ExactCoord {
        self.points[p].as_ref().expect("dependencies are checked before placement")
    }

    fn line(&self, l: usize) -> &ExactCoord {
        self.lines[l].as_ref().expect("dependencies are checked before placement")
    }

    fn admissible(&self, obj: Placed, c: &ExactCoord) -> bool {
        match obj {
            Placed::Point(p) => {
                self.placed_points.iter().all(|&q| self.point(q) != c)
                    && self
                        .placed_lines
                        .iter()
                        .all(|&l| c.incident(self.line(l)) == self.want.contains(&(p, l)))
            }
            Placed::Line(l) => {
                self.placed_lines.iter().all(|&m| self.line(m) != c)
                    && self
                        .placed_points
                        .iter()
                        .all(|&p| c.incident(self.point(p)) == self.want.contains(&(p, l)))
            }
        }
    }

    fn put(&mut self, obj: Placed, c: ExactCoord) {
        match obj {
            Placed::Point(p) => {
                self.points[p] = Some(c);
                self.placed_points.push(p);
            }
            Placed::Line(l) => {
                self.lines[l] = Some(c);
                self.placed_lines.push(l);
            }
        }
    }

    fn try_place(&mut self, obj: Placed, c: ExactCoord) -> bool {
        if self.admissible(obj, &c) {
            self.put(obj, c);
            true
        } else {
            false
        }
    }

    /// Places a group atomically: on failure nothing stays on the canvas.
    fn try_place_all(&mut self, objs: &[(Placed, ExactCoord)]) -> bool {
        let (np, nl) = (self.placed_points.len(), self.placed_lines.len());
        for (obj, c) in objs {
            if !self.try_place(*obj, c.clone()) {
                for p in self.placed_points.drain(np..) {
                    self.points[p] = None;
                }
                for l in self.placed_lines.drain(nl..) {
                    self.lines[l] = None;
                }
                return false;
            }
        }
        true
    }

    fn finish(self) -> Realization {
        Realization {
            points: self.points.into_iter().map(|c| c.expect("every point placed")).collect(),
            lines: self.lines.into_iter().map(|c| c.expect("every line placed")).collect(),
            broken: None,
        }
    }
}

pub(super) struct Sampler {
    rng: ChaCha8Rng,
    num: i64,
    den: i64,
}

impl Sampler {
    pub(super) fn new(rng: ChaCha8Rng, config: &SamplingConfig, attempt: usize) -> Self {
        let grow = |b: i64| {
            (0..attempt).fold(b, |acc, _| acc.saturating_mul(config.growth).min(config.max_bound))
        };
        Sampler {
            rng,
            num: grow(config.numerator_bound).max(1),
            den: grow(config.denominator_bound).max(1),
        }
    }

    pub(super) fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-self.num..=self.num);
        let d = self.rng.gen_range(1..=self.den);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn affine_point(&mut self) -> ExactCoord {
        let (x, y) = (self.rational(), self.rational());
        ExactCoord::affine(x, y)
    }

    fn line(&mut self) -> Option<ExactCoord> {
        let v = [self.rational(), self.rational(), self.rational()];
        ExactCoord::from_array(v)
    }

    /// A point of `l`, finite whenever `l` is not the line at infinity.
    fn point_on(&mut self, l: &ExactCoord) -> ExactCoord {
        let [a, b, c] = l.coords().clone();
        let t = self.rational();
        let v = if !b.is_zero() {
            let y = -(a * t.clone() + c) / b;
            [t, y, Rational::one()]
        } else if !a.is_zero() {
            [-c / a, t, Rational::one()]
        } else {
            [Rational::one(), t, Rational::zero()]
        };
        ExactCoord::from_array(v).expect("last or first entry is one")
    }

    pub(super) fn matrix(&mut self) -> ExactMatrix {
        loop {
            let m = crate::Matrix3([0, 1, 2].map(|_| [0, 1, 2].map(|_| self.rational())));
            if m.is_invertible() {
                return m;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levi::{levi, peel};
    use crate::realization::verify_realization;
    use crate::structure::tests::fano;
    use crate::structure::validate;

    #[test]
    fn free_point_and_free_line() {
        let trace = PeelTrace {
            point_count: 1,
            line_count: 1,
            removed: vec![Placed::Line(0), Placed::Point(0)],
            instructions: vec![DrawInstruction::FreePoint(0), DrawInstruction::FreeLine(0)],
            leftover: vec![],
            leftover_edges: vec![],
        };
        let r = replay(&trace, 3).unwrap();
        assert!(!r.points[0].incident(&r.lines[0]));
    }

    #[test]
    fn cubic_trace_is_rejected() {
        let t = peel(&levi(&fano()));
        assert_eq!(replay(&t, 0), Err(ReplayError::LeftoverNotEmpty(14)));
    }

    #[test]
    fn quadrangle_replays_and_verifies() {
        let s = validate(
            ["a", "b", "c", "d"],
            [["a", "b"], ["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"], ["c", "d"]],
        )
        .unwrap();
        let r = replay(&peel(&levi(&s)), 7).unwrap();
        assert!(verify_realization(&s, &r).unwrap().is_clean());
        assert_eq!(r, replay(&peel(&levi(&s)), 7).unwrap());
    }

    #[test]
    fn broken_fano_misses_exactly_the_removed_edge() {
        let f = fano();
        let t = peel(&levi(&f).without_incidence(0, 0).unwrap());
        let mut r = replay(&t, 1).unwrap();
        assert!(!r.points[0].incident(&r.lines[0]));
        r.broken = Some((0, 0));
        let rep = verify_realization(&f, &r).unwrap();
        assert!(rep.is_clean(), "{rep:?}");
        assert_eq!(rep.realized, 20);
    }

    #[test]
    fn seeds_must_cover_leftover() {
        let t = peel(&levi(&fano()));
        let err = replay_with(&t, &[Seeded::default()], 0, &SamplingConfig::default());
        assert!(matches!(err, Err(ReplayError::SeedMismatch(_))));
    }

    #[test]
    fn tiny_window_exhausts_retries() {
        // With only the values -1..=1 available, three free points on a
        // line quickly run out of distinct choices.
        let s = validate(["a", "b", "c", "d", "e"], [["a", "b", "c", "d", "e"]]).unwrap();
        let config = SamplingConfig {
            numerator_bound: 1,
            denominator_bound: 1,
            growth: 1,
            retries: 5,
            restarts: 2,
            ..SamplingConfig::default()
        };
        let t = peel(&levi(&s));
        assert_eq!(
            replay_with(&t, &[], 0, &config),
            Err(ReplayError::RetriesExhausted { restarts: 2 })
        );
    }
}
