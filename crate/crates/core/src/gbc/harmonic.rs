//! Discrete harmonic coordinates and interpolants on refined triangulations.

use std::sync::Arc;

use rayon::prelude::*;

use super::boundary::{BoundaryData, BoundaryMap};
use super::GbcError;
use crate::cdt::{constrained_delaunay, TriMesh};
use crate::fem::{prolong_all, refine_tri, DirichletSystem, PointLocator, Refinement, ScalarField};
use crate::geometry::{Point2, Polygon};

/// A polygon meshed for P1 Dirichlet solves: the fine mesh, its stiffness
/// blocks and the boundary parametrization. When built from the CDT the
/// coarse triangulation and refinement history are kept so that
/// triangulation interpolants can be lifted onto the fine mesh.
pub struct PolygonDiscretization {
    polygon: Polygon,
    coarse: Option<(TriMesh, Vec<Refinement>)>,
    level: usize,
    system: DirichletSystem<TriMesh>,
    boundary: BoundaryMap,
}

impl PolygonDiscretization {
    /// CDT of `p` refined uniformly `level` times.
    pub fn new(p: &Polygon, level: usize) -> Result<Self, GbcError> {
        let cdt = constrained_delaunay(p)?;
        let (fine, history) = refine_tri(&cdt, level);
        let mesh = Arc::new(fine);
        let boundary = BoundaryMap::new(p, &mesh)?;
        let system = DirichletSystem::new(mesh);
        Ok(Self { polygon: p.clone(), coarse: Some((cdt, history)), level, system, boundary })
    }

    /// Any triangulation of `p` whose boundary nodes lie on `p`'s edges.
    pub fn from_mesh(p: &Polygon, mesh: TriMesh) -> Result<Self, GbcError> {
        let boundary = BoundaryMap::new(p, &mesh)?;
        let system = DirichletSystem::new(Arc::new(mesh));
        Ok(Self { polygon: p.clone(), coarse: None, level: 0, system, boundary })
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn mesh(&self) -> &Arc<TriMesh> {
        self.system.mesh()
    }

    pub fn coarse_mesh(&self) -> Option<&TriMesh> {
        self.coarse.as_ref().map(|(m, _)| m)
    }

    pub fn system(&self) -> &DirichletSystem<TriMesh> {
        &self.system
    }

    pub fn boundary_map(&self) -> &BoundaryMap {
        &self.boundary
    }

    pub fn hat(&self, i: usize) -> Result<BoundaryData, GbcError> {
        if i >= self.polygon.len() {
            return Err(GbcError::VertexIndex { index: i, count: self.polygon.len() });
        }
        Ok(self.boundary.hat(i))
    }

    /// Harmonic interpolant of polygon-vertex values.
    pub fn harmonic_interpolant(&self, values: &[f64], tol: f64) -> Result<ScalarField<TriMesh>, GbcError> {
        let g = self.boundary.trace(values)?;
        Ok(self.system.solve(&g.values, tol)?)
    }

    /// Discrete harmonic extension of arbitrary boundary data.
    pub fn solve_boundary(&self, g: &BoundaryData, tol: f64) -> Result<ScalarField<TriMesh>, GbcError> {
        Ok(self.system.solve(&g.values, tol)?)
    }

    /// All coordinate functions, solved in parallel.
    pub fn coordinates(&self, tol: f64) -> Result<HarmonicCoordinateSet, GbcError> {
        let coords = (0..self.polygon.len())
            .into_par_iter()
            .map(|i| self.system.solve(&self.boundary.hat(i).values, tol))
            .collect::<Result<Vec<_>, _>>()?;
        let corner_nodes = self
            .boundary
            .corner_nodes()
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(GbcError::MissingCorner)?;
        Ok(HarmonicCoordinateSet {
            polygon: self.polygon.clone(),
            level: self.level,
            tol,
            mesh: self.mesh().clone(),
            corner_nodes,
            coords,
        })
    }

    /// Piecewise-linear interpolant over the CDT, expressed on the fine mesh.
    pub fn triangulation_interpolant(&self, values: &[f64]) -> Result<ScalarField<TriMesh>, GbcError> {
        let (cdt, history) = self.coarse.as_ref().ok_or(GbcError::NoCoarseTriangulation)?;
        let coarse = triangulation_interpolant(cdt, values)?;
        let fine = prolong_all(history, coarse.coefficients());
        Ok(ScalarField::new(self.mesh().clone(), fine)?)
    }
}

/// The discrete harmonic coordinates of a polygon.
#[derive(Clone, Debug)]
pub struct HarmonicCoordinateSet {
    pub polygon: Polygon,
    pub level: usize,
    pub tol: f64,
    pub mesh: Arc<TriMesh>,
    /// Mesh node of each polygon vertex.
    pub corner_nodes: Vec<usize>,
    pub coords: Vec<ScalarField<TriMesh>>,
}

impl HarmonicCoordinateSet {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// All coordinates at mesh node `v`.
    pub fn at_node(&self, v: usize) -> Vec<f64> {
        self.coords.iter().map(|c| c.value_at_vertex(v)).collect()
    }

    pub fn locator(&self) -> PointLocator {
        PointLocator::new(self.mesh.clone())
    }

    /// All coordinates at an arbitrary point, `None` outside the mesh.
    pub fn evaluate(&self, locator: &PointLocator, p: Point2) -> Option<Vec<f64>> {
        let (t, w) = locator.locate(p)?;
        let tri = self.mesh.triangles()[t];
        Some(
            self.coords
                .iter()
                .map(|c| (0..3).map(|k| w[k] * c.coefficients()[tri[k]]).sum())
                .collect(),
        )
    }
}

/// Coordinates on the uniformly refined CDT of `p`.
pub fn harmonic_coordinates(p: &Polygon, level: usize, tol: f64) -> Result<HarmonicCoordinateSet, GbcError> {
    PolygonDiscretization::new(p, level)?.coordinates(tol)
}

/// Harmonic interpolant of polygon-vertex values on the refined CDT.
pub fn harmonic_interpolant(p: &Polygon, values: &[f64], level: usize, tol: f64) -> Result<ScalarField<TriMesh>, GbcError> {
    PolygonDiscretization::new(p, level)?.harmonic_interpolant(values, tol)
}

/// Piecewise-linear interpolant on a triangulation whose vertices are
/// exactly the polygon vertices.
pub fn triangulation_interpolant(m: &TriMesh, values: &[f64]) -> Result<ScalarField<TriMesh>, GbcError> {
    if values.len() != m.vertices().len() {
        return Err(GbcError::SteinerVertices { vertices: m.vertices().len(), values: values.len() });
    }
    Ok(ScalarField::new(Arc::new(m.clone()), values.to_vec())?)
}
