//! Delaunay and constrained Delaunay triangulations with quality audits.

mod constrained;
mod delaunay;
mod quality;
mod trimesh;

pub use constrained::constrained_delaunay;
pub use delaunay::delaunay;
pub use quality::{
    adjacent_circumradius_violation, circumradii, local_delaunay_violations, quality_report,
    verify_adjacent_circumradius, verify_walk_lemma, QualityReport,
};
pub use trimesh::{edge_key, TriMesh};

use thiserror::Error;

use crate::geometry::GeometryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CdtError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("all points are collinear")]
    Collinear,
    #[error("could not recover segment ({0}, {1})")]
    ConstraintRecovery(usize, usize),
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
