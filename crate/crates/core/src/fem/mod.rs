//! P1 finite elements on triangle and tetrahedral meshes.

mod assembly;
mod field;
mod mesh;
mod quadrature;
mod refine;
mod sparse;

pub use assembly::{assemble_stiffness, solve_dirichlet, DirichletSystem, DEFAULT_TOL};
pub use field::{PointLocator, ScalarField};
pub use mesh::{element_geometry, mesh_measure, ElementGeometry, SimplexMesh, TetMesh};
pub use quadrature::{rule, TestFunction, TET_RULE, TRIANGLE_RULE};
pub use refine::{prolong_all, refine_tet, refine_tri, refine_tri_once, Refinement};
pub use sparse::{pcg, CsrMatrix, SolveStats};

use thiserror::Error;

use crate::cdt::TriMesh;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FemError {
    #[error("conjugate gradients stopped after {iterations} iterations at relative residual {relative_residual:e}")]
    NoConvergence { iterations: usize, relative_residual: f64 },
    #[error("expected {expected} values, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("boundary value at vertex {0} is not finite")]
    NonFinite(usize),
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
}

/// Uniform refinement of a simplicial mesh.
pub trait RefineUniform: Sized {
    fn refine_uniform(&self, levels: usize) -> Result<(Self, Vec<Refinement>), FemError>;
}

impl RefineUniform for TriMesh {
    fn refine_uniform(&self, levels: usize) -> Result<(Self, Vec<Refinement>), FemError> {
        Ok(refine_tri(self, levels))
    }
}

impl RefineUniform for TetMesh {
    fn refine_uniform(&self, levels: usize) -> Result<(Self, Vec<Refinement>), FemError> {
        refine_tet(self, levels)
    }
}

/// `|u|_{H^2}` of a quadratic over a domain of given dimension and measure.
pub fn h2_seminorm_analytic(u: &TestFunction, dim: usize, measure: f64) -> f64 {
    u.h2_seminorm(dim, measure)
}
