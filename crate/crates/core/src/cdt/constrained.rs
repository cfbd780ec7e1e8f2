//! Constrained Delaunay triangulation of a simple polygon.
//!
//! The vertices are triangulated first. Each missing polygon edge is then
//! recovered by flipping the edges that cross it, after which the mesh is
//! re-legalized with the polygon edges frozen. Triangles outside the
//! polygon are removed by flooding inward from unconstrained hull edges.

use std::collections::VecDeque;

use super::delaunay::{build, Builder};
use super::trimesh::{edge_key, TriMesh};
use super::CdtError;
use crate::geometry::predicates::segments_cross_properly;
use crate::geometry::{orient2d, Orientation, Polygon};

fn has_edge(b: &Builder, u: usize, v: usize) -> bool {
    b.edges.contains_key(&(u, v)) || b.edges.contains_key(&(v, u))
}

fn crossing_edges(b: &Builder, u: usize, v: usize) -> VecDeque<(usize, usize)> {
    let (pu, pv) = (b.pts[u], b.pts[v]);
    let mut out: Vec<_> = b
        .edges
        .keys()
        .filter(|&&(x, y)| x < y && x != u && x != v && y != u && y != v)
        .filter(|&&(x, y)| segments_cross_properly(pu, pv, b.pts[x], b.pts[y]))
        .copied()
        .collect();
    out.sort_unstable();
    out.into()
}

fn recover(b: &mut Builder, u: usize, v: usize) -> Result<(), CdtError> {
    let mut queue = crossing_edges(b, u, v);
    let budget = 50 * (queue.len() + 1) * (queue.len() + 1);
    let mut steps = 0;
    let (pu, pv) = (b.pts[u], b.pts[v]);
    while let Some((x, y)) = queue.pop_front() {
        steps += 1;
        if steps > budget {
            return Err(CdtError::ConstraintRecovery(u, v));
        }
        let (Some(p), Some(d)) = (b.apex(x, y), b.apex(y, x)) else {
            return Err(CdtError::ConstraintRecovery(u, v));
        };
        let pts = b.pts;
        let convex = orient2d(pts[x], pts[d], pts[p]) == Orientation::CounterClockwise
            && orient2d(pts[d], pts[y], pts[p]) == Orientation::CounterClockwise;
        if !convex {
            queue.push_back((x, y));
            continue;
        }
        b.flip(x, y);
        let touches = [p, d].contains(&u) || [p, d].contains(&v);
        if !touches && segments_cross_properly(pu, pv, pts[p], pts[d]) {
            queue.push_back(edge_key(p, d));
        }
    }
    if has_edge(b, u, v) {
        Ok(())
    } else {
        Err(CdtError::ConstraintRecovery(u, v))
    }
}

/// Constrained Delaunay triangulation of a polygon with no added vertices.
/// Mesh vertex `i` is polygon vertex `i`; every polygon edge is constrained.
pub fn constrained_delaunay(poly: &Polygon) -> Result<TriMesh, CdtError> {
    let pts = poly.vertices();
    let n = pts.len();
    let mut b = build(pts)?;
    let segments: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for &(u, v) in &segments {
        if !has_edge(&b, u, v) {
            recover(&mut b, u, v)?;
        }
        b.constrained.insert(edge_key(u, v));
    }
    let all = b.interior_edges();
    b.legalize(all);

    // Flood the exterior from hull edges that are not polygon edges.
    let mut exterior = vec![false; b.tris.len()];
    let mut stack: Vec<usize> = b
        .edges
        .iter()
        .filter(|&(&(x, y), _)| !b.edges.contains_key(&(y, x)) && !b.constrained.contains(&edge_key(x, y)))
        .map(|(_, &t)| t)
        .collect();
    stack.sort_unstable();
    while let Some(t) = stack.pop() {
        if exterior[t] {
            continue;
        }
        exterior[t] = true;
        let tri = b.tris[t];
        for k in 0..3 {
            let (x, y) = (tri[k], tri[(k + 1) % 3]);
            if b.constrained.contains(&edge_key(x, y)) {
                continue;
            }
            if let Some(&s) = b.edges.get(&(y, x)) {
                if !exterior[s] {
                    stack.push(s);
                }
            }
        }
    }
    let tris = b
        .tris
        .iter()
        .zip(&exterior)
        .filter(|(_, &e)| !e)
        .map(|(&t, _)| t)
        .collect();
    TriMesh::new(pts.to_vec(), tris, segments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;

    fn poly(pts: &[(f64, f64)]) -> Polygon {
        Polygon::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn notched_pentagon_contains_the_flat_bottom_triangle() {
        let eps = 0.1;
        let p = poly(&[(-1., 0.), (1., 0.), (1., 1.), (0., eps), (-1., 1.)]);
        let m = constrained_delaunay(&p).unwrap();
        assert_eq!(m.triangles().len(), 3);
        assert!((m.area() - (1.0 + eps)).abs() < 1e-12);
        let flat = m.triangles().iter().any(|t| {
            let mut s = *t;
            s.sort_unstable();
            s == [0, 1, 3]
        });
        assert!(flat);
    }

    #[test]
    fn square_with_midpoint_vertex() {
        let p = poly(&[(0., 0.), (0.5, 0.), (1., 0.), (1., 1.), (0., 1.)]);
        let m = constrained_delaunay(&p).unwrap();
        assert_eq!(m.triangles().len(), 3);
        assert_eq!(m.constrained_edges().len(), 5);
        assert!((m.area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn comb_polygon_needs_recovery_and_carving() {
        // Deep teeth force both constraint recovery and exterior removal.
        let p = poly(&[
            (0., 0.), (5., 0.), (5., 3.), (4., 3.), (4., 0.5), (3., 0.5), (3., 3.),
            (2., 3.), (2., 0.5), (1., 0.5), (1., 3.), (0., 3.),
        ]);
        let m = constrained_delaunay(&p).unwrap();
        assert_eq!(m.triangles().len(), p.len() - 2);
        assert!((m.area() - p.area()).abs() < 1e-12 * p.area());
    }
}
