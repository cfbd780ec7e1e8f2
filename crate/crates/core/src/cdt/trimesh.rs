use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::CdtError;
use crate::geometry::{orient2d, triangle_area, Orientation, Point2};

/// Undirected edge key with the smaller index first.
pub fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A triangle mesh with counter-clockwise triangles and marked constrained
/// edges.
///
/// `neighbors[t][k]` is the triangle across edge `k` of `t`, the edge from
/// `triangles[t][k]` to `triangles[t][(k + 1) % 3]`.
#[derive(Clone, Debug, Serialize)]
pub struct TriMesh {
    vertices: Vec<Point2>,
    triangles: Vec<[usize; 3]>,
    constrained: BTreeSet<(usize, usize)>,
    neighbors: Vec<[Option<usize>; 3]>,
}

impl TriMesh {
    /// Builds a mesh and its adjacency. Triangles must be positively oriented
    /// and every interior edge shared by exactly two triangles.
    pub fn new(
        vertices: Vec<Point2>,
        triangles: Vec<[usize; 3]>,
        constrained: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, CdtError> {
        let mut directed = HashMap::with_capacity(3 * triangles.len());
        for (ti, t) in triangles.iter().enumerate() {
            if t.iter().any(|&v| v >= vertices.len()) {
                return Err(CdtError::InvalidMesh(format!("triangle {ti} has an out-of-range vertex")));
            }
            let [a, b, c] = t.map(|v| vertices[v]);
            if orient2d(a, b, c) != Orientation::CounterClockwise {
                return Err(CdtError::InvalidMesh(format!("triangle {ti} is not positively oriented")));
            }
            for k in 0..3 {
                if directed.insert((t[k], t[(k + 1) % 3]), ti).is_some() {
                    return Err(CdtError::InvalidMesh(format!("edge ({}, {}) is used twice in one direction", t[k], t[(k + 1) % 3])));
                }
            }
        }
        let neighbors = triangles
            .iter()
            .map(|t| std::array::from_fn(|k| directed.get(&(t[(k + 1) % 3], t[k])).copied()))
            .collect();
        let constrained: BTreeSet<_> = constrained.into_iter().map(|(a, b)| edge_key(a, b)).collect();
        for &(a, b) in &constrained {
            if !directed.contains_key(&(a, b)) && !directed.contains_key(&(b, a)) {
                return Err(CdtError::InvalidMesh(format!("constrained edge ({a}, {b}) is not a mesh edge")));
            }
        }
        Ok(Self { vertices, triangles, constrained, neighbors })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn constrained_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.constrained
    }

    pub fn neighbors(&self) -> &[[Option<usize>; 3]] {
        &self.neighbors
    }

    pub fn neighbor(&self, t: usize, k: usize) -> Option<usize> {
        self.neighbors[t][k]
    }

    pub fn triangle_points(&self, t: usize) -> [Point2; 3] {
        self.triangles[t].map(|v| self.vertices[v])
    }

    pub fn is_constrained(&self, a: usize, b: usize) -> bool {
        self.constrained.contains(&edge_key(a, b))
    }

    /// Edge `k` of triangle `t` has no neighbour.
    pub fn is_boundary_edge(&self, t: usize, k: usize) -> bool {
        self.neighbors[t][k].is_none()
    }

    pub fn area(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| {
                let [a, b, c] = self.triangle_points(t);
                triangle_area(a, b, c)
            })
            .sum()
    }

    /// Undirected edges, each once, in first-seen order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for t in &self.triangles {
            for k in 0..3 {
                let e = edge_key(t[k], t[(k + 1) % 3]);
                if seen.insert(e) {
                    out.push(e);
                }
            }
        }
        out
    }

    /// Boundary edges as directed pairs with the mesh on their left.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (ti, t) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                if self.neighbors[ti][k].is_none() {
                    out.push((t[k], t[(k + 1) % 3]));
                }
            }
        }
        out
    }

    /// Flags vertices lying on a boundary edge.
    pub fn boundary_vertices(&self) -> Vec<bool> {
        let mut flags = vec![false; self.vertices.len()];
        for (a, b) in self.boundary_edges() {
            flags[a] = true;
            flags[b] = true;
        }
        flags
    }

    /// Replaces the diagonal shared by triangle `t` (across its edge `k`)
    /// and its neighbour with the opposite diagonal. Fails for boundary
    /// edges and non-convex quadrilaterals. Constraint markers are left
    /// untouched except that a flipped constrained edge loses its marker.
    pub fn flip_edge(&mut self, t: usize, k: usize) -> Result<(), CdtError> {
        let s = self.neighbors[t][k].ok_or(CdtError::InvalidMesh("cannot flip a boundary edge".into()))?;
        let [a, b, p] = [self.triangles[t][k], self.triangles[t][(k + 1) % 3], self.triangles[t][(k + 2) % 3]];
        let d = *self.triangles[s]
            .iter()
            .find(|&&v| v != a && v != b)
            .expect("neighbour shares the edge");
        let (pa, pb, pp, pd) = (self.vertices[a], self.vertices[b], self.vertices[p], self.vertices[d]);
        if orient2d(pa, pd, pp) != Orientation::CounterClockwise
            || orient2d(pd, pb, pp) != Orientation::CounterClockwise
        {
            return Err(CdtError::InvalidMesh("quadrilateral is not strictly convex".into()));
        }
        self.constrained.remove(&edge_key(a, b));
        self.triangles[t] = [a, d, p];
        self.triangles[s] = [d, b, p];
        self.rebuild_adjacency();
        Ok(())
    }

    fn rebuild_adjacency(&mut self) {
        let mut directed = HashMap::with_capacity(3 * self.triangles.len());
        for (ti, t) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                directed.insert((t[k], t[(k + 1) % 3]), ti);
            }
        }
        self.neighbors = self
            .triangles
            .iter()
            .map(|t| std::array::from_fn(|k| directed.get(&(t[(k + 1) % 3], t[k])).copied()))
            .collect();
    }

    /// Index of the triangle containing `p` (closed), by linear scan.
    pub fn locate(&self, p: Point2) -> Option<usize> {
        (0..self.triangles.len()).find(|&t| {
            let [a, b, c] = self.triangle_points(t);
            orient2d(a, b, p) != Orientation::Clockwise
                && orient2d(b, c, p) != Orientation::Clockwise
                && orient2d(c, a, p) != Orientation::Clockwise
        })
    }
}
