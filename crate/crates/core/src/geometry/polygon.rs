use serde::Serialize;

use super::predicates::{orient2d, segments_intersect, Orientation};
use super::{max_pairwise, GeometryError, Point2};

/// A simple polygon with counter-clockwise vertices.
///
/// Collinear consecutive vertices are allowed; every segment between
/// consecutive vertices is its own edge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices { needed: 3, got: n });
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite { index: i });
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(GeometryError::RepeatedVertex { index: i });
            }
        }
        check_simple(&vertices)?;
        let poly = Self { vertices };
        if poly.signed_area() <= 0.0 {
            return Err(GeometryError::NotCounterClockwise);
        }
        Ok(poly)
    }

    /// Accepts either orientation and reverses clockwise input.
    pub fn new_any_orientation(mut vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if shoelace(&vertices) < 0.0 {
            vertices.reverse();
        }
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1 (mod n)`.
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        let n = self.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn signed_area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn diameter(&self) -> f64 {
        max_pairwise(&self.vertices, Point2::dist)
    }

    /// Convex when no vertex makes a right turn; collinear runs are allowed.
    pub fn is_convex(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            orient2d(
                self.vertices[(i + n - 1) % n],
                self.vertices[i],
                self.vertices[(i + 1) % n],
            ) != Orientation::Clockwise
        })
    }

    /// Point-in-polygon test; points on the boundary count as inside.
    pub fn contains(&self, p: Point2) -> bool {
        if self.on_boundary(p) {
            return true;
        }
        let mut winding = 0_i32;
        for (a, b) in self.edges() {
            if a.y <= p.y {
                if b.y > p.y && orient2d(a, b, p) == Orientation::CounterClockwise {
                    winding += 1;
                }
            } else if b.y <= p.y && orient2d(a, b, p) == Orientation::Clockwise {
                winding -= 1;
            }
        }
        winding != 0
    }

    pub fn on_boundary(&self, p: Point2) -> bool {
        self.edges().any(|(a, b)| super::predicates::on_segment(p, a, b))
    }

    /// Distance from `p` to the polygon boundary.
    pub fn boundary_distance(&self, p: Point2) -> f64 {
        self.edges()
            .map(|(a, b)| p.dist_to_segment(a, b))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    /// Applies `f` to every vertex. Similarity maps keep the polygon valid;
    /// reflections are undone by reversing the vertex order.
    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Result<Self, GeometryError> {
        Self::new_any_orientation(self.vertices.iter().map(|&v| f(v)).collect())
    }
}

fn shoelace(v: &[Point2]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>()
}

fn check_simple(v: &[Point2]) -> Result<(), GeometryError> {
    let n = v.len();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (v[j], v[(j + 1) % n]);
            let adjacent_next = j == i + 1;
            let adjacent_wrap = i == 0 && j == n - 1;
            if adjacent_next || adjacent_wrap {
                // Neighbouring edges share one endpoint; they must not fold
                // back onto each other.
                let (shared, p, q) = if adjacent_next { (b, a, d) } else { (a, b, c) };
                if orient2d(p, shared, q) == Orientation::Collinear
                    && (p - shared).dot(q - shared) > 0.0
                {
                    return Err(GeometryError::SelfIntersecting { first: i, second: j });
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return Err(GeometryError::SelfIntersecting { first: i, second: j });
            }
        }
    }
    Ok(())
}
