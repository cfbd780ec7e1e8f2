//! Planar and spatial primitives: points, robust predicates, polygons,
//! polyhedra, simplex metrics and inradii of convex bodies.

mod inradius;
mod point;
mod polygon;
mod polyhedron;
pub mod predicates;
mod simplex;

pub use inradius::{chebyshev_center, inradius_convex_polygon, inradius_convex_polyhedron};
pub(crate) use point::max_pairwise;
pub use point::{Point2, Point3};
pub use polygon::Polygon;
pub use polyhedron::{box_polyhedron, regular_octahedron, regular_tetrahedron, Plane, Polyhedron};
pub use predicates::{incircle, orient2d, Orientation};
pub use simplex::{
    circumcircle, diameter, diameter3, is_obtuse, longest_edge, tet_circumradius, tet_quality,
    tet_signed_volume, triangle_area, triangle_inradius, triangle_quality, SimplexQuality,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("vertex {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("vertex {index} coincides with its successor")]
    RepeatedVertex { index: usize },
    #[error("edges {first} and {second} intersect")]
    SelfIntersecting { first: usize, second: usize },
    #[error("vertices are not in counter-clockwise order")]
    NotCounterClockwise,
    #[error("face {face}: {reason}")]
    BadFace { face: usize, reason: String },
    #[error("surface is not a closed 2-manifold: {detail}")]
    NonManifold { detail: String },
    #[error("faces are not outward oriented")]
    NotOutward,
    #[error("degenerate simplex: {0}")]
    Degenerate(&'static str),
    #[error("body is not convex")]
    NotConvex,
    #[error("linear program failed: {0}")]
    LinearProgram(&'static str),
}
