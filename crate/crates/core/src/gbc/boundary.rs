//! Piecewise-linear boundary data on the boundary nodes of a polygon mesh.

use std::collections::HashMap;

use super::GbcError;
use crate::cdt::TriMesh;
use crate::geometry::Polygon;

/// Where a boundary mesh vertex sits on the polygon boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryLocation {
    /// Coincides with polygon vertex `j`.
    Vertex(usize),
    /// On edge `e` (from vertex `e` to `e + 1`) at parameter `t` in `(0, 1)`.
    Edge(usize, f64),
}

/// Boundary location of every mesh vertex (`None` for interior vertices).
#[derive(Clone, Debug)]
pub struct BoundaryMap {
    n_polygon: usize,
    locations: Vec<Option<BoundaryLocation>>,
}

const ON_EDGE_RTOL: f64 = 1e-10;

impl BoundaryMap {
    pub fn new(p: &Polygon, m: &TriMesh) -> Result<Self, GbcError> {
        let flags = m.boundary_vertices();
        Self::with_flags(p, m, &flags)
    }

    pub fn with_flags(p: &Polygon, m: &TriMesh, boundary: &[bool]) -> Result<Self, GbcError> {
        let n = p.len();
        let corner: HashMap<(u64, u64), usize> = p
            .vertices()
            .iter()
            .enumerate()
            .map(|(j, v)| ((v.x.to_bits(), v.y.to_bits()), j))
            .collect();
        let tol = ON_EDGE_RTOL * p.diameter();
        let mut locations = vec![None; m.vertices().len()];
        for (v, &q) in m.vertices().iter().enumerate() {
            if !boundary[v] {
                continue;
            }
            if let Some(&j) = corner.get(&(q.x.to_bits(), q.y.to_bits())) {
                locations[v] = Some(BoundaryLocation::Vertex(j));
                continue;
            }
            let (e, d) = (0..n)
                .map(|e| {
                    let (a, b) = p.edge(e);
                    (e, q.dist_to_segment(a, b))
                })
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .expect("polygon has edges");
            if d > tol {
                return Err(GbcError::OffBoundary { vertex: v, distance: d });
            }
            let (a, b) = p.edge(e);
            let ab = b - a;
            let t = ((q - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
            locations[v] = Some(BoundaryLocation::Edge(e, t));
        }
        Ok(Self { n_polygon: n, locations })
    }

    pub fn location(&self, v: usize) -> Option<BoundaryLocation> {
        self.locations[v]
    }

    /// Mesh vertex index of each polygon vertex.
    pub fn corner_nodes(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.n_polygon];
        for (v, loc) in self.locations.iter().enumerate() {
            if let Some(BoundaryLocation::Vertex(j)) = loc {
                out[*j] = Some(v);
            }
        }
        out
    }

    /// Linear interpolation of polygon-vertex values along each edge.
    pub fn trace(&self, values: &[f64]) -> Result<BoundaryData, GbcError> {
        if values.len() != self.n_polygon {
            return Err(GbcError::WrongValueCount { expected: self.n_polygon, got: values.len() });
        }
        let n = self.n_polygon;
        let data = self
            .locations
            .iter()
            .map(|loc| match *loc {
                None => 0.0,
                Some(BoundaryLocation::Vertex(j)) => values[j],
                Some(BoundaryLocation::Edge(e, t)) => (1.0 - t) * values[e] + t * values[(e + 1) % n],
            })
            .collect();
        Ok(BoundaryData { values: data })
    }

    /// Hat data of polygon vertex `i`.
    pub fn hat(&self, i: usize) -> BoundaryData {
        let mut delta = vec![0.0; self.n_polygon];
        delta[i] = 1.0;
        self.trace(&delta).expect("length matches")
    }
}

/// Dirichlet data, one value per mesh vertex; interior entries are unused.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryData {
    pub values: Vec<f64>,
}

/// Hat data `g_i` of polygon vertex `i` on the boundary nodes of `m`.
pub fn boundary_hat(p: &Polygon, i: usize, m: &TriMesh) -> Result<BoundaryData, GbcError> {
    if i >= p.len() {
        return Err(GbcError::VertexIndex { index: i, count: p.len() });
    }
    Ok(BoundaryMap::new(p, m)?.hat(i))
}
