//! Enumeration of irreducible contact graphs of congruent circle packings on
//! the unit sphere.

pub mod plane_graph;
pub mod sphere_geom;
pub mod linear_relax;
pub mod feasibility;
pub mod certifier;
pub mod pipeline;
