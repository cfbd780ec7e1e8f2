use std::cmp::Ordering;

use serde::Serialize;

use super::predicates::{angle_sign, orient2d, Orientation};
use super::{max_pairwise, GeometryError, Point2, Point3};

/// Size and shape measures of a triangle or tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimplexQuality {
    pub diameter: f64,
    pub circumradius: f64,
    pub inradius: f64,
    /// `diameter / inradius`.
    pub aspect_ratio: f64,
}

/// Circumcenter and circumradius of a triangle.
pub fn circumcircle(a: Point2, b: Point2, c: Point2) -> Result<(Point2, f64), GeometryError> {
    if orient2d(a, b, c) == Orientation::Collinear {
        return Err(GeometryError::Degenerate("collinear triangle"));
    }
    let (u, v) = (b - a, c - a);
    let d = 2.0 * u.cross(v);
    let (uu, vv) = (u.dot(u), v.dot(v));
    let off = Point2::new((v.y * uu - u.y * vv) / d, (u.x * vv - v.x * uu) / d);
    Ok((a + off, off.norm()))
}

/// Maximum pairwise distance of a planar point set.
pub fn diameter(points: &[Point2]) -> Result<f64, GeometryError> {
    if points.len() < 2 {
        return Err(GeometryError::TooFewVertices { needed: 2, got: points.len() });
    }
    Ok(max_pairwise(points, Point2::dist))
}

/// Maximum pairwise distance of a spatial point set.
pub fn diameter3(points: &[Point3]) -> Result<f64, GeometryError> {
    if points.len() < 2 {
        return Err(GeometryError::TooFewVertices { needed: 2, got: points.len() });
    }
    Ok(max_pairwise(points, Point3::dist))
}

pub fn triangle_area(a: Point2, b: Point2, c: Point2) -> f64 {
    0.5 * (b - a).cross(c - a).abs()
}

pub fn triangle_inradius(a: Point2, b: Point2, c: Point2) -> f64 {
    let perimeter = a.dist(b) + b.dist(c) + c.dist(a);
    2.0 * triangle_area(a, b, c) / perimeter
}

/// Local index `k` of the longest edge, where edge `k` joins vertices `k`
/// and `k + 1 (mod 3)`.
pub fn longest_edge(t: [Point2; 3]) -> usize {
    let len = |k: usize| t[k].dist(t[(k + 1) % 3]);
    let mut best = 0;
    for k in 1..3 {
        if len(k) > len(best) {
            best = k;
        }
    }
    best
}

/// True when some angle of the triangle strictly exceeds a right angle.
/// Right angles are decided exactly.
pub fn is_obtuse(a: Point2, b: Point2, c: Point2) -> bool {
    angle_sign(b, c, a) == Ordering::Less
        || angle_sign(c, a, b) == Ordering::Less
        || angle_sign(a, b, c) == Ordering::Less
}

pub fn triangle_quality(a: Point2, b: Point2, c: Point2) -> Result<SimplexQuality, GeometryError> {
    let (_, circumradius) = circumcircle(a, b, c)?;
    let diameter = a.dist(b).max(b.dist(c)).max(c.dist(a));
    let inradius = triangle_inradius(a, b, c);
    Ok(SimplexQuality { diameter, circumradius, inradius, aspect_ratio: diameter / inradius })
}

pub fn tet_signed_volume(t: [Point3; 4]) -> f64 {
    (t[1] - t[0]).dot((t[2] - t[0]).cross(t[3] - t[0])) / 6.0
}

fn tet_face_area_sum(t: [Point3; 4]) -> f64 {
    const FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    FACES
        .iter()
        .map(|f| 0.5 * (t[f[1]] - t[f[0]]).cross(t[f[2]] - t[f[0]]).norm())
        .sum()
}

pub fn tet_circumradius(t: [Point3; 4]) -> Result<f64, GeometryError> {
    let (u, v, w) = (t[1] - t[0], t[2] - t[0], t[3] - t[0]);
    let det = u.dot(v.cross(w));
    if det == 0.0 {
        return Err(GeometryError::Degenerate("zero-volume tetrahedron"));
    }
    // Solve [u; v; w] x = rhs by Cramer's rule.
    let rhs = Point3::new(0.5 * u.dot(u), 0.5 * v.dot(v), 0.5 * w.dot(w));
    let off = (v.cross(w) * rhs.x + w.cross(u) * rhs.y + u.cross(v) * rhs.z) * (1.0 / det);
    Ok(off.norm())
}

/// Tetrahedron quality with inradius `3V / (total face area)`.
pub fn tet_quality(t: [Point3; 4]) -> Result<SimplexQuality, GeometryError> {
    let volume = tet_signed_volume(t).abs();
    if volume == 0.0 {
        return Err(GeometryError::Degenerate("zero-volume tetrahedron"));
    }
    let inradius = 3.0 * volume / tet_face_area_sum(t);
    let diameter = max_pairwise(&t, Point3::dist);
    Ok(SimplexQuality {
        diameter,
        circumradius: tet_circumradius(t)?,
        inradius,
        aspect_ratio: diameter / inradius,
    })
}
