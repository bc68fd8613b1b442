//! The length spectral sequence of the free loop space of a manifold whose
//! geodesics are all closed of one length, read through the unit tangent
//! bundle.

pub mod gysin;
pub mod page;
pub mod ring;
pub mod spec;
pub mod table;

pub use gysin::{gysin_rank_defect, gysin_unit_tangent_homology, UnitTangentHomology};
pub use page::{
    build_page1, check_differential, collapse_to_infinity, differential, differential_d1,
    t_bidegree, thom_row, Differential, PageElement, PageIndex, SpectralPage, Vanishing,
};
pub use ring::GeneratorRing;
pub use spec::{bott_index, CrossSpec, GeneratorId, GysinEntry, ProductEntry, Space};
pub use table::{loop_homology_table, GradedTable, GroupSeries, SeriesCheck, TableRow};
