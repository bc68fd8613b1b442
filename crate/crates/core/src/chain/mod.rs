//! Simplicial chains with orientation-twisted coefficients, their integral
//! (co)homology, and the intersection ring of a closed manifold.

pub mod cochain;
pub mod complex;
pub mod homology;
pub mod intersection;

pub use cochain::{cap_product, cup_product, Chain, Cochain};
pub use complex::{
    validate_complex, ChainComplexZ, OrientationCharacter, Simplex, SimplicialComplex,
};
pub use homology::{
    cohomology, cohomology_basis, homology, homology_basis, GradedBasis, GroupSummary,
    HomologySummary, Subquotient,
};
pub use intersection::{
    fundamental_class, intersection_product, ClosedManifold, DoldSign, FundamentalClass,
    GradedClass, IntersectionRing,
};
