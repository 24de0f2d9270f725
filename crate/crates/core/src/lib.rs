//! Taut, Alexander and edge-orientation double cover polynomials of
//! veering triangulations.

pub mod census_io;
pub mod perm;
pub mod laurent;
pub mod taut_structure;
pub mod homology;
pub mod invariants;
pub mod filling;
