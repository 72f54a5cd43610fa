//! Commensurizer growth of uniform tree lattices via twin covers.
//!
//! Cosets of the commensurizer of a uniform tree lattice correspond to
//! isomorphism classes of minimal twin covers of the quotient graph: a
//! connected pointed graph with two covering maps of the same degree to the
//! base. Enumerating and classifying those covers computes the growth
//! sequence degree by degree.

mod enumerate;
mod graph;
mod twin;

pub use enumerate::{
    automorphisms, enumerate_pointed_covers, enumerate_second_covers, hall_count, PointedCover,
};
pub use graph::{is_covering, DartMultigraph, GraphError, GraphMap};
pub use twin::{
    aut_bound, count_comm_classes, is_minimal, twin_iso, DegreeCount, EnumerationBudget,
    TwinCover, TwinError,
};
