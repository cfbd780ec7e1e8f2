//! Degenerating domain families, their closed-form lower bounds, and the
//! runners and lemma checks built on top of them.

mod bounds;
mod families;
mod meshes;
mod polyhedra;
mod run;

pub use bounds::{flattening_check, flattening_profile, paper_lower_bound, FlatteningReport};
pub use families::{
    check_polygon_assumptions, check_polyhedron_assumptions, gen_convex2d, gen_convex3d, gen_nonconvex2d,
    gen_nonconvex3d, nonconvex2d_strip_contained, AssumptionCheck, PolygonInstance, PolyhedronInstance,
};
pub use meshes::{convex3d_mesh, graded_nonconvex2d_mesh, graded_nonconvex3d_mesh, polyhedron_trace};
pub use polyhedra::{
    class_p_check, incenter_star_mesh, random_bipyramid, tet_quality_sample, ClassPReport, StarMesh,
    TetQualitySample,
};
pub use run::{
    competitor_energy, competitor_value, fit_loglog_slope, linear_fit, quarter_symmetry, run_family,
    run_instance, CompetitorReport, ExperimentRow, FamilyKind, FamilySpec, LinearFit, QuarterCheck, RowField,
};

use thiserror::Error;

use crate::cdt::CdtError;
use crate::fem::FemError;
use crate::gbc::GbcError;
use crate::geometry::GeometryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Cdt(#[from] CdtError),
    #[error(transparent)]
    Fem(#[from] FemError),
    #[error(transparent)]
    Gbc(#[from] GbcError),
    #[error("{name} = {value} is outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },
    #[error("assumption {0} fails")]
    Assumption(String),
    #[error("parameters must be positive and strictly decreasing")]
    BadParameters,
    #[error("no closed-form lower bound for the {0} family")]
    NoBound(&'static str),
    #[error("the {0} family has no interpolation runner")]
    NotRunnable(&'static str),
    #[error("{0}")]
    BadData(&'static str),
    #[error("polyhedron is not in the class: {0}")]
    NotMember(String),
    #[error("mesh boundary vertex {vertex} lies on no face (distance {distance:e})")]
    OffBoundary { vertex: usize, distance: f64 },
    #[error("sampler gave up after {0} attempts")]
    SamplerExhausted(usize),
}
