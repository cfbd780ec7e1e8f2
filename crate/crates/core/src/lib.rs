//! Harmonic generalized barycentric coordinates on polygons and polyhedra.
//!
//! The crate builds constrained Delaunay triangulations, audits their
//! circumradius quality, solves discrete Dirichlet problems with P1 finite
//! elements and runs the interpolation-error experiments on families of
//! degenerating domains.

pub mod geometry;
pub mod cdt;
pub mod fem;
pub mod gbc;
pub mod experiments;
