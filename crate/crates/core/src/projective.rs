//! Homogeneous coordinates in the projective plane.
//!
//! Points and lines share one representation. A point `u` lies on a line `v`
//! iff `u · v = 0`; the line through two points and the meet of two lines
//! are both cross products.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::scalar::{Canonical, Scalar};

/// A nonzero projective triple kept in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomCoord<T>([T; 3]);

impl<T: Canonical> HomCoord<T> {
    /// Returns `None` for the zero triple, which names no projective object.
    pub fn new(a: T, b: T, c: T) -> Option<Self> {
        Self::from_array([a, b, c])
    }

    pub fn from_array(v: [T; 3]) -> Option<Self> {
        if v.iter().all(Zero::is_zero) {
            None
        } else {
            Some(HomCoord(T::canonicalize(v)))
        }
    }

    /// The affine point `(x, y)`.
    pub fn affine(x: T, y: T) -> Self {
        HomCoord(T::canonicalize([x, y, T::one()]))
    }

    pub fn coords(&self) -> &[T; 3] {
        &self.0
    }

    pub fn into_array(self) -> [T; 3] {
        self.0
    }

    pub fn dot(&self, other: &Self) -> T {
        dot(&self.0, &other.0)
    }

    pub fn incident(&self, other: &Self) -> bool {
        self.dot(other).is_zero()
    }

    /// Join of two points or meet of two lines. `None` when they coincide.
    pub fn cross(&self, other: &Self) -> Option<Self> {
        Self::from_array(cross(&self.0, &other.0))
    }

    /// `self + t·other` on the raw representatives.
    pub fn combine(&self, t: &T, other: &Self) -> Option<Self> {
        let v = [
            self.0[0].clone() + t.clone() * other.0[0].clone(),
            self.0[1].clone() + t.clone() * other.0[1].clone(),
            self.0[2].clone() + t.clone() * other.0[2].clone(),
        ];
        Self::from_array(v)
    }

    /// Two distinct objects incident with `self` (points on a line or lines
    /// through a point), taken from the coordinate axes.
    pub fn pencil_basis(&self) -> (Self, Self) {
        let axes = [
            [T::one(), T::zero(), T::zero()],
            [T::zero(), T::one(), T::zero()],
            [T::zero(), T::zero(), T::one()],
        ];
        let mut found: Vec<Self> = Vec::with_capacity(2);
        for axis in &axes {
            if let Some(c) = Self::from_array(cross(&self.0, axis)) {
                if found.first() != Some(&c) {
                    found.push(c);
                    if found.len() == 2 {
                        break;
                    }
                }
            }
        }
        let second = found.pop().expect("a nonzero triple meets at least two axes");
        let first = found.pop().expect("a nonzero triple meets at least two axes");
        (first, second)
    }

    /// Affine coordinates, or `None` for points on `z = 0`.
    pub fn to_affine(&self) -> Option<(T, T)> {
        let z = &self.0[2];
        if z.is_zero() {
            None
        } else {
            Some((self.0[0].clone() / z.clone(), self.0[1].clone() / z.clone()))
        }
    }
}

impl<T: Canonical + ToPrimitive> HomCoord<T> {
    pub fn to_f64(&self) -> HomCoord<f64> {
        let v = [
            self.0[0].to_f64().unwrap_or(f64::NAN),
            self.0[1].to_f64().unwrap_or(f64::NAN),
            self.0[2].to_f64().unwrap_or(f64::NAN),
        ];
        HomCoord(f64::canonicalize(v))
    }
}

impl<T: fmt::Display> fmt::Display for HomCoord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.0[0], self.0[1], self.0[2])
    }
}

impl<T: fmt::Debug> fmt::Debug for HomCoord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} : {:?} : {:?}]", self.0[0], self.0[1], self.0[2])
    }
}

pub fn dot<T: Scalar>(a: &[T; 3], b: &[T; 3]) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn cross<T: Scalar>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

/// A 3×3 matrix acting on points by `x ↦ M x`.
///
/// Lines follow with the adjugate transpose, so incidence is preserved
/// without ever dividing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix3<T>(pub [[T; 3]; 3]);

impl<T: Scalar> Matrix3<T> {
    pub fn identity() -> Self {
        let o = T::one;
        let z = T::zero;
        Matrix3([[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]])
    }

    /// Matrix whose columns are the given triples.
    pub fn from_columns(c0: &[T; 3], c1: &[T; 3], c2: &[T; 3]) -> Self {
        let col = |i: usize| [c0[i].clone(), c1[i].clone(), c2[i].clone()];
        Matrix3([col(0), col(1), col(2)])
    }

    pub fn rows(&self) -> &[[T; 3]; 3] {
        &self.0
    }

    pub fn determinant(&self) -> T {
        let m = &self.0;
        dot(&m[0], &cross(&m[1], &m[2]))
    }

    /// Adjugate: `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        // Rows of adj(M)^T are the pairwise cross products of the rows of M.
        let c0 = cross(&m[1], &m[2]);
        let c1 = cross(&m[2], &m[0]);
        let c2 = cross(&m[0], &m[1]);
        Matrix3::from_columns(&c0, &c1, &c2)
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Matrix3::from_columns(&m[0], &m[1], &m[2])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: [[T; 3]; 3] = Self::identity().0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).fold(T::zero(), |acc, k| {
                    acc + self.0[i][k].clone() * other.0[k][j].clone()
                });
            }
        }
        Matrix3(out)
    }

    pub fn apply(&self, v: &[T; 3]) -> [T; 3] {
        [dot(&self.0[0], v), dot(&self.0[1], v), dot(&self.0[2], v)]
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }
}

impl<T: Canonical> Matrix3<T> {
    pub fn map_point(&self, p: &HomCoord<T>) -> Option<HomCoord<T>> {
        HomCoord::from_array(self.apply(p.coords()))
    }

    /// Image of a line under the point map `self`.
    pub fn map_line(&self, l: &HomCoord<T>) -> Option<HomCoord<T>> {
        HomCoord::from_array(self.adjugate().transpose().apply(l.coords()))
    }
}
