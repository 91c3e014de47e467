//! Degree and line-size multiplicities, written as a pair of polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::structure::IncidenceStructure;

/// `(f(x), g(y))` with `f = Σ nᵢ x^rᵢ` over point degrees and
/// `g = Σ mⱼ y^kⱼ` over line sizes. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    /// degree r -> number of points with degree r
    pub point_degrees: BTreeMap<usize, usize>,
    /// size k -> number of lines with size k
    pub line_sizes: BTreeMap<usize, usize>,
}

impl Signature {
    pub fn of(s: &IncidenceStructure) -> Self {
        let mut sig = Signature::default();
        for p in 0..s.point_count() {
            *sig.point_degrees.entry(s.degree(p)).or_default() += 1;
        }
        for l in s.lines() {
            *sig.line_sizes.entry(l.len()).or_default() += 1;
        }
        sig
    }

    pub fn from_terms<P, L>(points: P, lines: L) -> Self
    where
        P: IntoIterator<Item = (usize, usize)>,
        L: IntoIterator<Item = (usize, usize)>,
    {
        let collect = |it: &mut dyn Iterator<Item = (usize, usize)>| {
            let mut m = BTreeMap::new();
            for (exp, count) in it {
                if count > 0 {
                    *m.entry(exp).or_insert(0) += count;
                }
            }
            m
        };
        Signature {
            point_degrees: collect(&mut points.into_iter()),
            line_sizes: collect(&mut lines.into_iter()),
        }
    }

    /// `(n x^r, m y^k)`.
    pub fn configuration(n: usize, r: usize, m: usize, k: usize) -> Self {
        Self::from_terms([(r, n)], [(k, m)])
    }

    /// `(n x^3, y^2 + (n-2) y^3 + y^4)`, the near-configuration signature.
    pub fn near(n: usize) -> Self {
        assert!(n >= 2, "near-configuration signature needs n >= 2");
        Self::from_terms([(3, n)], [(2, 1), (3, n - 2), (4, 1)])
    }

    pub fn point_count(&self) -> usize {
        self.point_degrees.values().sum()
    }

    pub fn line_count(&self) -> usize {
        self.line_sizes.values().sum()
    }

    /// `f'(1)`: incidences counted through points.
    pub fn point_incidences(&self) -> usize {
        self.point_degrees.iter().map(|(r, n)| r * n).sum()
    }

    /// `g'(1)`: incidences counted through lines.
    pub fn line_incidences(&self) -> usize {
        self.line_sizes.iter().map(|(k, m)| k * m).sum()
    }

    /// `f'(1) = g'(1)`, which every realized signature satisfies.
    pub fn is_balanced(&self) -> bool {
        self.point_incidences() == self.line_incidences()
    }

    /// Signature of the dual structure.
    pub fn swapped(&self) -> Self {
        Signature {
            point_degrees: self.line_sizes.clone(),
            line_sizes: self.point_degrees.clone(),
        }
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, var: char, terms: &BTreeMap<usize, usize>) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (exp, coeff)) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str("+")?;
        }
        match (*coeff, *exp) {
            (c, 0) => write!(f, "{c}")?,
            (1, 1) => write!(f, "{var}")?,
            (c, 1) => write!(f, "{c}{var}")?,
            (1, e) => write!(f, "{var}^{e}")?,
            (c, e) => write!(f, "{c}{var}^{e}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Signature {
    /// Renders as `(9x^3, y^2+7y^3+y^4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_poly(f, 'x', &self.point_degrees)?;
        f.write_str(", ")?;
        write_poly(f, 'y', &self.line_sizes)?;
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::validate;

    #[test]
    fn quadrangle_signature() {
        let k4 = validate(
            ["a", "b", "c", "d"],
            [["a", "b"], ["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"], ["c", "d"]],
        )
        .unwrap();
        let sig = k4.signature();
        assert_eq!(sig, Signature::configuration(4, 3, 6, 2));
        assert_eq!(sig.to_string(), "(4x^3, 6y^2)");
        assert!(sig.is_balanced());
    }

    #[test]
    fn display_of_mixed_terms() {
        let s = Signature::from_terms([(1, 1), (3, 10)], [(1, 4), (3, 9)]);
        assert_eq!(s.to_string(), "(x+10x^3, 4y+9y^3)");
        assert_eq!(Signature::near(9).to_string(), "(9x^3, y^2+7y^3+y^4)");
        assert_eq!(Signature::default().to_string(), "(0, 0)");
        assert_eq!(Signature::from_terms([(0, 2)], []).to_string(), "(2, 0)");
    }

    #[test]
    fn near_signature_forces_n_lines() {
        for n in 2..40 {
            let s = Signature::near(n);
            assert_eq!(s.line_count(), n);
            assert!(s.is_balanced());
        }
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        assert_eq!(Signature::near(2), Signature::from_terms([(3, 2)], [(2, 1), (4, 1)]));
    }
}
