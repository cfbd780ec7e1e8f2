//! Generalized barycentric coordinates: boundary data, discrete harmonic
//! coordinates and interpolants, triangulation coordinates, and checks.

mod axioms;
mod boundary;
mod harmonic;

pub use axioms::{
    axiom_check, dirichlet_compare, dirichlet_compare_on, interior_samples, invariance_violation,
    static_axioms, AxiomReport, DirichletComparison, Similarity,
};
pub use boundary::{boundary_hat, BoundaryData, BoundaryLocation, BoundaryMap};
pub use harmonic::{
    harmonic_coordinates, harmonic_interpolant, triangulation_interpolant, HarmonicCoordinateSet,
    PolygonDiscretization,
};

use thiserror::Error;

use crate::cdt::CdtError;
use crate::fem::FemError;
use crate::geometry::GeometryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GbcError {
    #[error(transparent)]
    Cdt(#[from] CdtError),
    #[error(transparent)]
    Fem(#[from] FemError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("mesh boundary vertex {vertex} is {distance:e} away from every polygon edge")]
    OffBoundary { vertex: usize, distance: f64 },
    #[error("vertex index {index} out of range for {count} polygon vertices")]
    VertexIndex { index: usize, count: usize },
    #[error("expected {expected} vertex values, got {got}")]
    WrongValueCount { expected: usize, got: usize },
    #[error("triangulation has {vertices} vertices but {values} values were given; Steiner vertices are not allowed")]
    SteinerVertices { vertices: usize, values: usize },
    #[error("a polygon vertex is not a mesh boundary node")]
    MissingCorner,
    #[error("mesh was not built from a constrained Delaunay triangulation")]
    NoCoarseTriangulation,
}
