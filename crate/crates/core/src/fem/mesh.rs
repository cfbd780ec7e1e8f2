use std::collections::HashMap;

use serde::Serialize;

use super::FemError;
use crate::cdt::TriMesh;
use crate::geometry::{tet_signed_volume, Point3};

/// A conforming simplicial mesh of triangles (2D) or tetrahedra (3D).
pub trait SimplexMesh: Send + Sync {
    fn dim(&self) -> usize;
    fn n_vertices(&self) -> usize;
    fn n_elements(&self) -> usize;
    /// Vertex indices of element `e`, `dim + 1` of them.
    fn element(&self, e: usize) -> &[usize];
    /// Coordinates of vertex `v`, padded with zeros.
    fn point(&self, v: usize) -> [f64; 3];
    /// Flags vertices on the boundary of the meshed domain.
    fn boundary_vertex_flags(&self) -> Vec<bool>;
}

impl SimplexMesh for TriMesh {
    fn dim(&self) -> usize {
        2
    }
    fn n_vertices(&self) -> usize {
        self.vertices().len()
    }
    fn n_elements(&self) -> usize {
        self.triangles().len()
    }
    fn element(&self, e: usize) -> &[usize] {
        &self.triangles()[e]
    }
    fn point(&self, v: usize) -> [f64; 3] {
        self.vertices()[v].to_array()
    }
    fn boundary_vertex_flags(&self) -> Vec<bool> {
        self.boundary_vertices()
    }
}

/// A tetrahedral mesh with positively oriented tetrahedra.
#[derive(Clone, Debug, Serialize)]
pub struct TetMesh {
    vertices: Vec<Point3>,
    tets: Vec<[usize; 4]>,
    boundary_faces: Vec<[usize; 3]>,
}

const TET_FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

impl TetMesh {
    /// Validates orientation and conformity and extracts the boundary.
    pub fn new(vertices: Vec<Point3>, tets: Vec<[usize; 4]>) -> Result<Self, FemError> {
        for (ti, t) in tets.iter().enumerate() {
            if t.iter().any(|&v| v >= vertices.len()) {
                return Err(FemError::InvalidMesh(format!("tetrahedron {ti} has an out-of-range vertex")));
            }
            if tet_signed_volume(t.map(|v| vertices[v])) <= 0.0 {
                return Err(FemError::InvalidMesh(format!("tetrahedron {ti} does not have positive volume")));
            }
        }
        let mut faces: HashMap<[usize; 3], (usize, [usize; 3])> = HashMap::new();
        for t in &tets {
            for f in TET_FACES {
                let oriented = f.map(|k| t[k]);
                let mut key = oriented;
                key.sort_unstable();
                let entry = faces.entry(key).or_insert((0, oriented));
                entry.0 += 1;
                if entry.0 > 2 {
                    return Err(FemError::InvalidMesh(format!("face {key:?} shared by more than two tetrahedra")));
                }
            }
        }
        let mut boundary_faces: Vec<_> = faces.into_values().filter(|&(c, _)| c == 1).map(|(_, f)| f).collect();
        boundary_faces.sort_unstable();
        Ok(Self { vertices, tets, boundary_faces })
    }

    /// As [`TetMesh::new`], swapping two vertices of negatively oriented
    /// tetrahedra first.
    pub fn new_reoriented(vertices: Vec<Point3>, mut tets: Vec<[usize; 4]>) -> Result<Self, FemError> {
        for t in &mut tets {
            if tet_signed_volume(t.map(|v| vertices[v])) < 0.0 {
                t.swap(2, 3);
            }
        }
        Self::new(vertices, tets)
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn tets(&self) -> &[[usize; 4]] {
        &self.tets
    }

    /// Boundary faces, oriented outward.
    pub fn boundary_faces(&self) -> &[[usize; 3]] {
        &self.boundary_faces
    }

    pub fn tet_points(&self, t: usize) -> [Point3; 4] {
        self.tets[t].map(|v| self.vertices[v])
    }

    pub fn volume(&self) -> f64 {
        (0..self.tets.len()).map(|t| tet_signed_volume(self.tet_points(t))).sum()
    }
}

impl SimplexMesh for TetMesh {
    fn dim(&self) -> usize {
        3
    }
    fn n_vertices(&self) -> usize {
        self.vertices.len()
    }
    fn n_elements(&self) -> usize {
        self.tets.len()
    }
    fn element(&self, e: usize) -> &[usize] {
        &self.tets[e]
    }
    fn point(&self, v: usize) -> [f64; 3] {
        self.vertices[v].to_array()
    }
    fn boundary_vertex_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.vertices.len()];
        for f in &self.boundary_faces {
            for &v in f {
                flags[v] = true;
            }
        }
        flags
    }
}

/// Measure of an element and the constant gradients of its nodal basis
/// functions. Only the first `dim + 1` gradients are meaningful.
#[derive(Clone, Copy, Debug)]
pub struct ElementGeometry {
    pub measure: f64,
    pub grads: [[f64; 3]; 4],
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn element_geometry<M: SimplexMesh + ?Sized>(m: &M, e: usize) -> ElementGeometry {
    let vs = m.element(e);
    let p0 = m.point(vs[0]);
    let mut grads = [[0.0; 3]; 4];
    if m.dim() == 2 {
        let u = sub(m.point(vs[1]), p0);
        let v = sub(m.point(vs[2]), p0);
        let det = u[0] * v[1] - u[1] * v[0];
        grads[1] = [v[1] / det, -v[0] / det, 0.0];
        grads[2] = [-u[1] / det, u[0] / det, 0.0];
        grads[0] = [-grads[1][0] - grads[2][0], -grads[1][1] - grads[2][1], 0.0];
        ElementGeometry { measure: 0.5 * det.abs(), grads }
    } else {
        let u = sub(m.point(vs[1]), p0);
        let v = sub(m.point(vs[2]), p0);
        let w = sub(m.point(vs[3]), p0);
        let det = dot(u, cross(v, w));
        let scale = |a: [f64; 3]| a.map(|c| c / det);
        grads[1] = scale(cross(v, w));
        grads[2] = scale(cross(w, u));
        grads[3] = scale(cross(u, v));
        grads[0] = std::array::from_fn(|k| -(grads[1][k] + grads[2][k] + grads[3][k]));
        ElementGeometry { measure: det.abs() / 6.0, grads }
    }
}

/// Total measure (area or volume) of a mesh.
pub fn mesh_measure<M: SimplexMesh + ?Sized>(m: &M) -> f64 {
    (0..m.n_elements()).map(|e| element_geometry(m, e).measure).sum()
}
