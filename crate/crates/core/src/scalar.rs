//! Scalar types usable as homogeneous coordinates.
//!
//! Geometry in this crate is written once over [`Scalar`]. Exact work uses
//! [`Ratio`] over arbitrary-precision integers; floating point is only used
//! when a picture has to be drawn.

use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, Zero};

/// A signed ring element with the operations projective geometry needs.
pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug {}

impl<T> Scalar for T where T: Num + Signed + Clone + PartialOrd + Debug {}

/// Scalars that admit a canonical representative for a projective triple.
///
/// Two triples describe the same projective object iff their canonical
/// forms are syntactically equal. The all-zero triple is left untouched.
pub trait Canonical: Scalar {
    fn canonicalize(v: [Self; 3]) -> [Self; 3];
}

impl<I> Canonical for Ratio<I>
where
    I: Integer + Signed + Clone + Debug,
{
    /// Clears denominators, divides out the content and makes the first
    /// nonzero entry positive, so the result has coprime integer entries.
    fn canonicalize(v: [Self; 3]) -> [Self; 3] {
        if v.iter().all(Zero::is_zero) {
            return v;
        }
        let lcm = v
            .iter()
            .fold(I::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<I> = v
            .iter()
            .map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone()))
            .collect();
        let mut content = ints.iter().fold(I::zero(), |acc, x| acc.gcd(x));
        let lead_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        if lead_negative {
            content = -content;
        }
        let mut out = ints.into_iter().map(|x| Ratio::from_integer(x / content.clone()));
        [
            out.next().unwrap(),
            out.next().unwrap(),
            out.next().unwrap(),
        ]
    }
}

macro_rules! float_canonical {
    ($t:ty) => {
        impl Canonical for $t {
            /// Scales to unit max-norm with a positive leading entry.
            fn canonicalize(v: [Self; 3]) -> [Self; 3] {
                let scale = v.iter().fold(0.0 as $t, |m, x| m.max(x.abs()));
                if scale == 0.0 {
                    return v;
                }
                let lead = v.iter().copied().find(|x| *x != 0.0).unwrap_or(1.0);
                let s = if lead < 0.0 { -scale } else { scale };
                [v[0] / s, v[1] / s, v[2] / s]
            }
        }
    };
}

float_canonical!(f32);
float_canonical!(f64);
