use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::replay::{Sampler, SamplingConfig};
use super::Realization;
use crate::{ExactCoord, ExactMatrix, Matrix3, Rational};

/// An affine chart for a realization: a line at infinity avoiding every
/// point, the transformation sending it to `z = 0`, and the images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChart {
    pub line_at_infinity: ExactCoord,
    pub matrix: ExactMatrix,
    pub points: Vec<(Rational, Rational)>,
    pub lines: Vec<ExactCoord>,
}

/// Picks a line at infinity missing every point, trying `z = 0` first and
/// then seeded random lines.
pub fn to_affine(r: &Realization, seed: u64) -> AffineChart {
    let z = ExactCoord::new(Rational::zero(), Rational::zero(), Rational::one()).expect("nonzero");
    let avoids = |l: &ExactCoord| r.points.iter().all(|p| !p.incident(l));
    let inf = if avoids(&z) {
        z
    } else {
        let config = SamplingConfig::default();
        let mut sampler = Sampler::new(ChaCha8Rng::seed_from_u64(seed), &config, 0);
        loop {
            let v = [sampler.rational(), sampler.rational(), sampler.rational()];
            if let Some(l) = ExactCoord::from_array(v) {
                if avoids(&l) {
                    break l;
                }
            }
        }
    };
    let matrix = chart_matrix(&inf);
    let points = r
        .points
        .iter()
        .map(|p| {
            matrix
                .map_point(p)
                .and_then(|q| q.to_affine())
                .expect("chart avoids every point")
        })
        .collect();
    let lines = r
        .lines
        .iter()
        .map(|l| matrix.map_line(l).expect("chart matrix is invertible"))
        .collect();
    AffineChart { line_at_infinity: inf, matrix, points, lines }
}

/// Rows: two unit vectors completing `inf` to a basis, then `inf` itself.
fn chart_matrix(inf: &ExactCoord) -> ExactMatrix {
    let c = inf.coords();
    let k = (0..3).rev().find(|&i| !c[i].is_zero()).expect("nonzero line");
    let unit = |i: usize| {
        let mut v = [Rational::zero(), Rational::zero(), Rational::zero()];
        v[i] = Rational::one();
        v
    };
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    Matrix3([unit(others[0]), unit(others[1]), c.clone()])
}
