//! Generators for the four degenerating families and programmatic checks of
//! their placement and non-degeneracy assumptions.

use serde::Serialize;

use super::ExperimentError;
use crate::geometry::{Point2, Point3, Polygon, Polyhedron};

const DIAM_TOL: f64 = 1e-12;

/// A polygon with a marked vertex approaching a marked non-incident edge.
#[derive(Clone, Debug, Serialize)]
pub struct PolygonInstance {
    pub param: f64,
    pub polygon: Polygon,
    pub vertex: usize,
    /// Edge from vertex `edge` to `edge + 1`.
    pub edge: usize,
    /// Smallest of the governing non-degeneracy distances.
    pub c_v: f64,
    /// Distance from the marked vertex to the marked edge.
    pub dist: f64,
}

/// A polyhedron with a marked vertex approaching a marked face.
#[derive(Clone, Debug, Serialize)]
pub struct PolyhedronInstance {
    pub param: f64,
    pub polyhedron: Polyhedron,
    pub vertex: usize,
    pub face: usize,
    pub c_v: f64,
    pub dist: f64,
}

/// Outcome of one named assumption.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssumptionCheck {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

fn check(name: &'static str, holds: bool, detail: String) -> AssumptionCheck {
    AssumptionCheck { name, holds, detail }
}

fn first_failure(checks: &[AssumptionCheck]) -> Result<(), ExperimentError> {
    match checks.iter().find(|c| !c.holds) {
        Some(c) => Err(ExperimentError::Assumption(format!("{} ({})", c.name, c.detail))),
        None => Ok(()),
    }
}

/// Triangle `(-1/2, 0), (1/2, 0), (0, h)` with the apex marked.
pub fn gen_convex2d(h: f64) -> Result<PolygonInstance, ExperimentError> {
    let top = 3f64.sqrt() / 2.0;
    if !(h > 0.0 && h <= top) {
        return Err(ExperimentError::OutOfRange { name: "h", value: h, range: "(0, sqrt(3)/2]" });
    }
    let polygon = Polygon::new(vec![Point2::new(-0.5, 0.0), Point2::new(0.5, 0.0), Point2::new(0.0, h)])?;
    let mut inst = PolygonInstance { param: h, polygon, vertex: 2, edge: 0, c_v: 0.0, dist: 0.0 };
    inst.dist = vertex_edge_distance(&inst);
    inst.c_v = endpoint_distance(&inst);
    first_failure(&check_polygon_assumptions(&inst, true))?;
    Ok(inst)
}

/// The notched pentagon `(-1,0), (1,0), (1,1), (0,eps), (-1,1)`, optionally
/// scaled by `1/sqrt(5)` to unit diameter. Assumptions are only checked on
/// the scaled instance.
pub fn gen_nonconvex2d(eps: f64, scaled: bool) -> Result<PolygonInstance, ExperimentError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(ExperimentError::OutOfRange { name: "eps", value: eps, range: "(0, 1)" });
    }
    let s = if scaled { nonconvex2d_scale() } else { 1.0 };
    let raw = [(-1.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, eps), (-1.0, 1.0)];
    let polygon = Polygon::new(raw.iter().map(|&(x, y)| Point2::new(x, y) * s).collect())?;
    let mut inst = PolygonInstance { param: eps, polygon, vertex: 3, edge: 0, c_v: 0.0, dist: 0.0 };
    inst.dist = vertex_edge_distance(&inst);
    inst.c_v = endpoint_distance(&inst).min(vertex_separation(&inst)).min(far_edge_distance(&inst));
    if scaled {
        first_failure(&check_polygon_assumptions(&inst, false))?;
        if !nonconvex2d_strip_contained(&inst) {
            return Err(ExperimentError::Assumption(format!("strip containment fails for eps = {eps}")));
        }
    }
    Ok(inst)
}

pub(crate) fn nonconvex2d_scale() -> f64 {
    1.0 / 5f64.sqrt()
}

fn vertex_edge_distance(inst: &PolygonInstance) -> f64 {
    let (a, b) = inst.polygon.edge(inst.edge);
    inst.polygon.vertex(inst.vertex).dist_to_segment(a, b)
}

fn endpoint_distance(inst: &PolygonInstance) -> f64 {
    let (a, b) = inst.polygon.edge(inst.edge);
    a.norm().min(b.norm())
}

fn vertex_separation(inst: &PolygonInstance) -> f64 {
    let v = inst.polygon.vertex(inst.vertex);
    inst.polygon
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != inst.vertex)
        .map(|(_, &w)| v.dist(w))
        .fold(f64::INFINITY, f64::min)
}

fn incident_edges(inst: &PolygonInstance) -> [usize; 2] {
    let n = inst.polygon.len();
    [(inst.vertex + n - 1) % n, inst.vertex]
}

fn far_edge_distance(inst: &PolygonInstance) -> f64 {
    let v = inst.polygon.vertex(inst.vertex);
    let skip = incident_edges(inst);
    (0..inst.polygon.len())
        .filter(|&e| e != inst.edge && !skip.contains(&e))
        .map(|e| {
            let (a, b) = inst.polygon.edge(e);
            v.dist_to_segment(a, b)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Whether some line through the marked vertex with non-negative slope has
/// the whole polygon below it.
fn supporting_line_exists(inst: &PolygonInstance) -> bool {
    let v = inst.polygon.vertex(inst.vertex);
    let tol = 1e-12;
    let (mut lo, mut hi) = (0.0_f64, f64::INFINITY);
    for &w in inst.polygon.vertices() {
        let (dx, dy) = (w.x - v.x, w.y - v.y);
        if dx > 0.0 {
            lo = lo.max(dy / dx);
        } else if dx < 0.0 {
            hi = hi.min(dy / dx);
        } else if dy > tol {
            return false;
        }
    }
    lo <= hi + tol
}

fn segment_inside(p: &Polygon, a: Point2, b: Point2, samples: usize) -> bool {
    (0..=samples).all(|k| {
        let t = k as f64 / samples as f64;
        p.contains(a + (b - a) * t)
    })
}

/// Placement and non-degeneracy checks for a 2D family member. For convex
/// families the supporting-line condition is checked; for the non-convex
/// family the vertex separation, far-edge distance and inner-segment
/// conditions are checked instead.
pub fn check_polygon_assumptions(inst: &PolygonInstance, convex: bool) -> Vec<AssumptionCheck> {
    let p = &inst.polygon;
    let v = p.vertex(inst.vertex);
    let (a, b) = p.edge(inst.edge);
    let diam = p.diameter();
    let mut out = vec![
        check("A1", (diam - 1.0).abs() <= DIAM_TOL, format!("diameter {diam}")),
        check("A2", a.y == 0.0 && b.y == 0.0, format!("edge endpoints {a:?}, {b:?}")),
        check("A3", v.x == 0.0 && v.y > 0.0, format!("vertex {v:?}")),
    ];
    if convex {
        out.push(check("A4", p.is_convex() && supporting_line_exists(inst), "supporting line".into()));
    }
    let ends = endpoint_distance(inst);
    out.push(check("A5", ends >= inst.c_v && inst.c_v > 0.0, format!("endpoint distance {ends}, c_v {}", inst.c_v)));
    out.push(check("A6", inst.dist > 0.0, format!("dist {}", inst.dist)));
    if !convex {
        let sep = vertex_separation(inst);
        out.push(check("A7", sep >= inst.c_v, format!("vertex separation {sep}")));
        let far = far_edge_distance(inst);
        out.push(check("A8", far >= inst.c_v, format!("far edge distance {far}")));
        out.push(check("A9", segment_inside(p, v, Point2::default(), 256), "segment to origin".into()));
    }
    out
}

/// Whether the strip between the marked edge and the incident edge heading
/// into `x < 0`, over `-c_v/2 <= xhat <= 0` in axes rotated 45 degrees
/// clockwise about the vertex, lies inside the polygon. The lower-bound
/// integral uses the sub-range `-c_v^2/2 <= xhat <= 0`.
pub fn nonconvex2d_strip_contained(inst: &PolygonInstance) -> bool {
    let p = &inst.polygon;
    let n = p.len();
    let v = p.vertex(inst.vertex);
    let [e_in, e_out] = incident_edges(inst);
    let other = |e: usize| if e == e_in { p.vertex(e_in) } else { p.vertex((e_out + 1) % n) };
    let Some(d1) = [e_in, e_out].into_iter().find(|&e| other(e).x < 0.0) else {
        return false;
    };
    let w = other(d1);
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let ex = Point2::new(r2, -r2);
    let ey = Point2::new(r2, r2);
    let (a, b) = p.edge(inst.edge);
    // Point on a line `q + s dir` hitting the slice `v + xh ex + yh ey`.
    let slice_hit = |xh: f64, q: Point2, dir: Point2| -> Option<Point2> {
        let base = v + ex * xh;
        let det = ey.cross(dir);
        if det == 0.0 {
            return None;
        }
        Some(q + dir * ((q - base).cross(ey) / det))
    };
    let half = 0.5 * inst.c_v;
    let corners = [
        slice_hit(0.0, a, b - a),
        slice_hit(-half, a, b - a),
        slice_hit(-half, v, w - v),
        slice_hit(0.0, v, w - v),
    ];
    let Some(corners) = corners.into_iter().collect::<Option<Vec<_>>>() else {
        return false;
    };
    let on_seg = |q: Point2, s0: Point2, s1: Point2| q.dist_to_segment(s0, s1) <= 1e-12;
    if !(on_seg(corners[0], a, b) && on_seg(corners[1], a, b) && on_seg(corners[2], v, w) && on_seg(corners[3], v, w))
    {
        return false;
    }
    // The sides are checked above; sample the interior only.
    let m = 24;
    (0..m).all(|i| {
        (0..m).all(|j| {
            let (s, t) = ((i as f64 + 0.5) / m as f64, (j as f64 + 0.5) / m as f64);
            let bottom = corners[0] + (corners[1] - corners[0]) * s;
            let top = corners[3] + (corners[2] - corners[3]) * s;
            p.contains(bottom + (top - bottom) * t)
        })
    })
}

/// Hexagonal pyramid: base hexagon of circumradius 1/2 in the `xy`-plane,
/// triangulated into a central triangle and three ears, apex `(0, 0, d)`.
/// The central triangle is the marked face.
pub fn gen_convex3d(d: f64) -> Result<PolyhedronInstance, ExperimentError> {
    let top = 3f64.sqrt() / 2.0;
    if !(d > 0.0 && d <= top) {
        return Err(ExperimentError::OutOfRange { name: "d", value: d, range: "(0, sqrt(3)/2]" });
    }
    let s = 3f64.sqrt() / 4.0;
    let vertices = vec![
        Point3::new(0.5, 0.0, 0.0),
        Point3::new(0.25, s, 0.0),
        Point3::new(-0.25, s, 0.0),
        Point3::new(-0.5, 0.0, 0.0),
        Point3::new(-0.25, -s, 0.0),
        Point3::new(0.25, -s, 0.0),
        Point3::new(0.0, 0.0, d),
    ];
    let mut faces = vec![vec![0, 4, 2], vec![0, 2, 1], vec![2, 4, 3], vec![4, 0, 5]];
    faces.extend((0..6).map(|k| vec![k, (k + 1) % 6, 6]));
    let polyhedron = Polyhedron::new(vertices, faces)?;
    finish_polyhedron(d, polyhedron, 6, 0, true)
}

/// Base square `[-1,1]^2 x {0}`, walls up to `z = 1`, and a four-sided
/// pyramidal notch from the top diamond down to `(0, 0, eps)`, scaled by
/// `1/3` to unit diameter. Every face except the base square is a triangle.
pub fn gen_nonconvex3d(eps: f64) -> Result<PolyhedronInstance, ExperimentError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(ExperimentError::OutOfRange { name: "eps", value: eps, range: "(0, 1)" });
    }
    let polyhedron = nonconvex3d_polyhedron(eps)?.scaled(nonconvex3d_scale());
    finish_polyhedron(eps, polyhedron, 12, 0, false)
}

pub(crate) fn nonconvex3d_scale() -> f64 {
    1.0 / 3.0
}

pub(crate) fn nonconvex3d_polyhedron(eps: f64) -> Result<Polyhedron, ExperimentError> {
    let raw = [
        (1., 1., 0.),
        (-1., 1., 0.),
        (1., -1., 0.),
        (-1., -1., 0.),
        (1., 1., 1.),
        (-1., 1., 1.),
        (1., -1., 1.),
        (-1., -1., 1.),
        (1., 0., 1.),
        (0., 1., 1.),
        (-1., 0., 1.),
        (0., -1., 1.),
        (0., 0., eps),
    ];
    let vertices: Vec<Point3> = raw.iter().map(|&(x, y, z)| Point3::new(x, y, z)).collect();
    let up = Point3::new(0., 0., 1.);
    let faces_with_direction: Vec<(Vec<usize>, Point3)> = vec![
        (vec![0, 2, 3, 1], up * -1.0),
        (vec![2, 0, 8], Point3::new(1., 0., 0.)),
        (vec![0, 4, 8], Point3::new(1., 0., 0.)),
        (vec![2, 8, 6], Point3::new(1., 0., 0.)),
        (vec![0, 1, 9], Point3::new(0., 1., 0.)),
        (vec![1, 5, 9], Point3::new(0., 1., 0.)),
        (vec![0, 9, 4], Point3::new(0., 1., 0.)),
        (vec![1, 3, 10], Point3::new(-1., 0., 0.)),
        (vec![3, 7, 10], Point3::new(-1., 0., 0.)),
        (vec![1, 10, 5], Point3::new(-1., 0., 0.)),
        (vec![3, 2, 11], Point3::new(0., -1., 0.)),
        (vec![2, 6, 11], Point3::new(0., -1., 0.)),
        (vec![3, 11, 7], Point3::new(0., -1., 0.)),
        (vec![4, 9, 8], up),
        (vec![5, 10, 9], up),
        (vec![7, 11, 10], up),
        (vec![6, 8, 11], up),
        (vec![12, 8, 9], up),
        (vec![12, 9, 10], up),
        (vec![12, 10, 11], up),
        (vec![12, 11, 8], up),
    ];
    let faces = faces_with_direction
        .into_iter()
        .map(|(mut f, out)| {
            let n = (vertices[f[1]] - vertices[f[0]]).cross(vertices[f[2]] - vertices[f[0]]);
            if n.dot(out) < 0.0 {
                f.reverse();
            }
            f
        })
        .collect();
    Ok(Polyhedron::new(vertices, faces)?)
}

fn finish_polyhedron(
    param: f64,
    polyhedron: Polyhedron,
    vertex: usize,
    face: usize,
    convex: bool,
) -> Result<PolyhedronInstance, ExperimentError> {
    let v = polyhedron.vertices()[vertex];
    let plane = polyhedron.face_plane(face);
    let dist = plane.signed_distance(v).abs();
    let c_v = polyhedron.face_boundary_distance(face, Point3::default());
    let inst = PolyhedronInstance { param, polyhedron, vertex, face, c_v, dist };
    first_failure(&check_polyhedron_assumptions(&inst, convex))?;
    Ok(inst)
}

fn point_in_face(p: &Polyhedron, face: usize, q: Point3) -> bool {
    let pts = p.face_points(face);
    let normal = p.face_plane(face).normal;
    let n = pts.len();
    (0..n).all(|i| (pts[(i + 1) % n] - pts[i]).cross(q - pts[i]).dot(normal) >= 0.0)
}

/// Placement and non-degeneracy checks for a 3D family member.
pub fn check_polyhedron_assumptions(inst: &PolyhedronInstance, convex: bool) -> Vec<AssumptionCheck> {
    let p = &inst.polyhedron;
    let v = p.vertices()[inst.vertex];
    let diam = p.diameter();
    let face_flat = p.face_points(inst.face).iter().all(|q| q.z == 0.0);
    let origin = Point3::default();
    let incident = p.faces()[inst.face].contains(&inst.vertex);
    let mut out = vec![
        check("B1", (diam - 1.0).abs() <= DIAM_TOL, format!("diameter {diam}")),
        check("B2", face_flat, format!("face {}", inst.face)),
        check("B3", v.x == 0.0 && v.y == 0.0 && v.z > 0.0 && !incident, format!("vertex {v:?}")),
        check(
            "B4",
            inst.c_v > 0.0 && point_in_face(p, inst.face, origin),
            format!("origin to face boundary {}", inst.c_v),
        ),
        check("B5", inst.dist > 0.0, format!("dist {}", inst.dist)),
    ];
    if convex {
        out.push(check("convex", p.is_convex(), String::new()));
    }
    out
}
