//! Exact intersection and loop products.
//!
//! * [`chain`]: simplicial complexes with twisted coefficients, Smith-form
//!   homology, cup and cap products, and the intersection ring.
//! * [`snf`], [`rational`]: the exact integer and rational linear algebra
//!   underneath.

pub mod catalog;
pub mod chain;
pub mod error;
pub mod geodesic;
pub mod io;
pub mod rational;
pub mod snf;
pub mod torus;

pub use chain::{
    cap_product, cup_product, fundamental_class, homology, intersection_product, validate_complex,
    ChainComplexZ, ClosedManifold, DoldSign, GradedClass, GroupSummary, HomologySummary,
    IntersectionRing, OrientationCharacter, SimplicialComplex,
};
pub use error::{Error, Result};
pub use snf::{smith_normal_form, IntMatrix, SmithDecomposition};
