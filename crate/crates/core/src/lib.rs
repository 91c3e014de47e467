//! Near-(n₃) point-line incidence structures: constructions, Levi graph
//! analysis, realizability decisions and exact projective realizations.
//!
//! A near-configuration on `n` points has every point on three lines, one
//! line of size two, one of size four and `n - 2` lines of size three.

pub mod constructions;
pub mod format;
pub mod iso;
pub mod levi;
pub mod projective;
pub mod realization;
pub mod scalar;
pub mod signature;
pub mod structure;

pub use constructions::{
    catalog, cyclic_config, glued_compound, near_config, non_geometric_compound,
    search_structures, Catalog, CatalogEntry, ConstructionError, GeometricStatus, SearchError,
    SearchOptions,
};
pub use iso::{invariant, isomorphic, Isomorphism};
pub use levi::{
    decide_realizability, levi, peel, peel_protected, DecideError, Girth, LeviGraph,
    PeelTrace, RealizabilityStatus, RealizabilityVerdict, Witness,
};
pub use projective::{HomCoord, Matrix3};
pub use realization::{
    align, compound_realization, realize, render_svg, replay, steinitz_realize, to_affine,
    verify_realization, AffineChart, AlignError, DrawInstruction, RealizeError, Realization,
    ReplayError, Report, SamplingConfig, SteinitzError, SvgOptions, VerifyError,
};
pub use scalar::{Canonical, Scalar};
pub use signature::Signature;
pub use structure::{validate, DualError, IncidenceStructure, StructureError};

/// Arbitrary-precision rational scalar used for all exact geometry.
pub type Rational = num_rational::BigRational;
/// Exact homogeneous coordinate of a point or line.
pub type ExactCoord = HomCoord<Rational>;
/// Exact projective transformation.
pub type ExactMatrix = Matrix3<Rational>;
/// Floating-point coordinate, used for drawing only.
pub type FloatCoord = HomCoord<f64>;
