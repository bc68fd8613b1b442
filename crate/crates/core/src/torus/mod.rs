//! Chains of affine simplices and loop families on the flat torus, and
//! their transverse intersection.

pub mod bichain;
pub mod classes;
pub mod grid;
pub mod intersect;
pub mod json;
pub mod random;
pub mod simplex;
pub mod transverse;

pub use bichain::{total_boundary, BiChain, BiTerm};
pub use classes::{coordinate_subsets, homology_class_torus, loop_class_torus};
pub use grid::TorusModel;
pub use intersect::{
    chain_intersection, compose_loops, derivation_check, BiPoint, DerivationReport, Piece,
    TransverseIntersection,
};
pub use json::{bichain_to_json, parse_bichain, parse_torus_chain, torus_chain_to_json};
pub use simplex::{AffineSimplex, LoopFamily, TorusChain};
pub use transverse::{
    is_transverse, perturb_translate, perturb_translate_detailed, transversality_witness, Face,
    Perturbation, TransversalityWitness, RETRY_CAP,
};
