//! Structured meshes for the experiment families.
//!
//! The non-convex families have a gap of width `eps` near the marked vertex,
//! so uniform refinement of a coarse mesh cannot resolve them at desk scale.
//! Both are meshed in sigma coordinates instead: a horizontal mesh graded
//! logarithmically towards the vertex, with the vertical direction split into
//! layers between the floor and the roof of the domain.

use std::collections::HashMap;

use super::families::{nonconvex3d_scale, PolygonInstance, PolyhedronInstance};
use super::ExperimentError;
use crate::cdt::TriMesh;
use crate::fem::{refine_tet, SimplexMesh, TestFunction, TetMesh};
use crate::geometry::{Point2, Point3, Polyhedron};

/// Nodes in `[0, 1]` with spacing proportional to `eps + x`, uniform in
/// `ln(1 + x / eps)` with step at most `step`.
fn graded_nodes(eps: f64, step: f64) -> Vec<f64> {
    let total = (1.0 + 1.0 / eps).ln();
    let n = (total / step).ceil().max(1.0) as usize;
    let mut out: Vec<f64> = (0..n).map(|k| eps * ((k as f64 * total / n as f64).exp() - 1.0)).collect();
    out.push(1.0);
    out
}

fn orient_ccw(pts: &[Point2], t: [usize; 3]) -> [usize; 3] {
    let [a, b, c] = t;
    if (pts[b] - pts[a]).cross(pts[c] - pts[a]) < 0.0 {
        [a, c, b]
    } else {
        t
    }
}

/// Graded triangulation of the notched pentagon: columns graded towards
/// `x = 0` and `2^level` layers between `y = 0` and the roof.
pub fn graded_nonconvex2d_mesh(inst: &PolygonInstance, level: usize) -> Result<TriMesh, ExperimentError> {
    let eps = inst.param;
    let layers = 1usize << level;
    let right = graded_nodes(eps, 1.0 / layers as f64);
    let mut xs: Vec<f64> = right.iter().rev().map(|&x| -x).collect();
    xs.pop();
    xs.extend(&right);
    let nx = xs.len();
    let scale = inst.polygon.vertex(1).x;
    let roof = |x: f64| if x.abs() == 1.0 { 1.0 } else { eps + (1.0 - eps) * x.abs() };
    let mut pts = Vec::with_capacity(nx * (layers + 1));
    for k in 0..=layers {
        let s = k as f64 / layers as f64;
        for &x in &xs {
            let y = if k == layers { roof(x) } else { s * roof(x) };
            pts.push(Point2::new(x, y) * scale);
        }
    }
    let id = |j: usize, k: usize| k * nx + j;
    let mut tris = Vec::with_capacity(2 * (nx - 1) * layers);
    for k in 0..layers {
        for (j, &x) in xs.iter().enumerate().take(nx - 1) {
            let (a, b, c, d) = (id(j, k), id(j + 1, k), id(j + 1, k + 1), id(j, k + 1));
            if x >= 0.0 {
                tris.extend([[a, b, c], [a, c, d]]);
            } else {
                tris.extend([[a, b, d], [b, c, d]]);
            }
        }
    }
    let tris = tris.into_iter().map(|t| orient_ccw(&pts, t)).collect();
    Ok(TriMesh::new(pts, tris, [])?)
}

/// Horizontal mesh of one quadrant `x, y >= 0` of `[-1,1]^2` for the
/// notched box: rings `x + y = rho` graded towards the origin inside the
/// diamond, and a uniform lattice on the corner triangle outside it.
fn quadrant_mesh(eps: f64, n: usize) -> (Vec<Point2>, Vec<[usize; 3]>, Vec<f64>) {
    let rings = graded_nodes(eps, 2.0 / n as f64);
    let mut pts = vec![Point2::default()];
    let mut rho_of = vec![0.0];
    let mut ring_ids: Vec<Vec<usize>> = vec![vec![0; n + 1]];
    for &rho in &rings[1..] {
        let ids = (0..=n)
            .map(|j| {
                let s = j as f64 / n as f64;
                pts.push(Point2::new(rho * (1.0 - s), rho * s));
                rho_of.push(rho);
                pts.len() - 1
            })
            .collect();
        ring_ids.push(ids);
    }
    let mut tris = Vec::new();
    for j in 0..n {
        tris.push([0, ring_ids[1][j], ring_ids[1][j + 1]]);
    }
    for k in 1..ring_ids.len() - 1 {
        for j in 0..n {
            let (a, b, c, d) = (ring_ids[k][j], ring_ids[k + 1][j], ring_ids[k + 1][j + 1], ring_ids[k][j + 1]);
            tris.extend([[a, b, c], [a, c, d]]);
        }
    }
    // Corner lattice on (1,0), (0,1), (1,1); row b = 0 is the outer ring.
    let outer = ring_ids.last().expect("at least one ring").clone();
    let mut lattice: HashMap<(usize, usize), usize> = (0..=n).map(|a| ((a, 0), outer[a])).collect();
    for b in 1..=n {
        for a in 0..=n - b {
            let (fa, fb) = (a as f64 / n as f64, b as f64 / n as f64);
            pts.push(corner_point(fa, fb));
            let last = pts.len() - 1;
            rho_of.push(1.0);
            lattice.insert((a, b), last);
        }
    }
    for b in 0..n {
        for a in 0..n - b {
            tris.push([lattice[&(a, b)], lattice[&(a + 1, b)], lattice[&(a, b + 1)]]);
            if a + b + 1 < n {
                tris.push([lattice[&(a + 1, b)], lattice[&(a + 1, b + 1)], lattice[&(a, b + 1)]]);
            }
        }
    }
    let tris = tris.into_iter().map(|t| orient_ccw(&pts, t)).collect();
    (pts, tris, rho_of)
}

/// Point `(1,0) + fa ((0,1) - (1,0)) + fb ((1,1) - (1,0))`.
fn corner_point(fa: f64, fb: f64) -> Point2 {
    Point2::new(1.0 - fa, fa + fb)
}

/// Reflects the quadrant mesh into all four quadrants, merging the nodes on
/// the axes.
fn reflect_quadrants(
    pts: &[Point2],
    tris: &[[usize; 3]],
    tag: &[f64],
) -> (Vec<Point2>, Vec<[usize; 3]>, Vec<f64>) {
    let mut out_pts = Vec::new();
    let mut out_tag = Vec::new();
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut out_tris = Vec::new();
    for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
        let ids: Vec<usize> = pts
            .iter()
            .zip(tag)
            .map(|(&p, &t)| {
                let q = Point2::new(sx * p.x + 0.0, sy * p.y + 0.0);
                *index.entry((q.x.to_bits(), q.y.to_bits())).or_insert_with(|| {
                    out_pts.push(q);
                    out_tag.push(t);
                    out_pts.len() - 1
                })
            })
            .collect();
        for t in tris {
            let mapped = t.map(|v| ids[v]);
            out_tris.push(orient_ccw(&out_pts, mapped));
        }
    }
    (out_pts, out_tris, out_tag)
}

/// Extrudes a horizontal triangulation between `z = 0` and `z = roof(v)`
/// with `layers` layers; each prism is split into three tetrahedra with
/// diagonals chosen from global node order so neighbours conform.
fn extrude(pts: &[Point2], tris: &[[usize; 3]], roof: &[f64], layers: usize, scale: f64) -> Result<TetMesh, ExperimentError> {
    let n2 = pts.len();
    let mut vertices = Vec::with_capacity(n2 * (layers + 1));
    for k in 0..=layers {
        let s = k as f64 / layers as f64;
        for (p, &h) in pts.iter().zip(roof) {
            let z = if k == layers { h } else { s * h };
            vertices.push(Point3::new(p.x, p.y, z) * scale);
        }
    }
    let id = |v: usize, k: usize| k * n2 + v;
    let mut tets = Vec::with_capacity(3 * tris.len() * layers);
    for t in tris {
        let mut t = *t;
        t.sort_unstable();
        let [a, b, c] = t;
        for k in 0..layers {
            let (a0, b0, c0) = (id(a, k), id(b, k), id(c, k));
            let (a1, b1, c1) = (id(a, k + 1), id(b, k + 1), id(c, k + 1));
            tets.extend([[a0, b0, c0, c1], [a0, b0, b1, c1], [a0, a1, b1, c1]]);
        }
    }
    Ok(TetMesh::new_reoriented(vertices, tets)?)
}

/// Graded tetrahedral mesh of the notched box. `level` sets the angular
/// resolution `2^level` per quadrant; the ring grading and the number of
/// layers follow from it.
pub fn graded_nonconvex3d_mesh(inst: &PolyhedronInstance, level: usize) -> Result<TetMesh, ExperimentError> {
    let eps = inst.param;
    let n = 1usize << level;
    let (qp, qt, qrho) = quadrant_mesh(eps, n);
    let (pts, tris, rho) = reflect_quadrants(&qp, &qt, &qrho);
    let roof: Vec<f64> = rho.iter().map(|&r| if r >= 1.0 { 1.0 } else { eps + (1.0 - eps) * r }).collect();
    let layers = (3 * n / 4).max(4);
    extrude(&pts, &tris, &roof, layers, nonconvex3d_scale())
}

/// Hexagonal pyramid split into one tetrahedron per base triangle, all
/// sharing the apex, then red-refined `level` times.
pub fn convex3d_mesh(inst: &PolyhedronInstance, level: usize) -> Result<TetMesh, ExperimentError> {
    let p = &inst.polyhedron;
    let apex = inst.vertex;
    let tets: Vec<[usize; 4]> = p
        .faces()
        .iter()
        .filter(|f| !f.contains(&apex))
        .map(|f| [f[0], f[1], f[2], apex])
        .collect();
    let coarse = TetMesh::new_reoriented(p.vertices().to_vec(), tets)?;
    Ok(refine_tet(&coarse, level)?.0)
}

/// Dirichlet data for `u` on the boundary nodes of a tetrahedral mesh: the
/// piecewise-linear interpolant of the vertex values on each fan triangle
/// of each face. Faces with more than three vertices are fan-triangulated,
/// which matters only when their vertex values differ.
pub fn polyhedron_trace(p: &Polyhedron, m: &TetMesh, u: &TestFunction) -> Result<Vec<f64>, ExperimentError> {
    let tol = 1e-9 * p.diameter();
    let verts = p.vertices();
    let values: Vec<f64> = verts.iter().map(|v| u.eval(v.to_array())).collect();
    let tris = p.triangles();
    let flags = m.boundary_vertex_flags();
    let mut out = vec![0.0; m.n_vertices()];
    for (v, &on) in flags.iter().enumerate() {
        if !on {
            continue;
        }
        let q = m.vertices()[v];
        let mut best: Option<(f64, f64)> = None;
        let mut closest = f64::INFINITY;
        for t in &tris {
            let (a, b, c) = (verts[t[0]], verts[t[1]], verts[t[2]]);
            let normal = (b - a).cross(c - a);
            let area2 = normal.norm();
            let off = ((q - a).dot(normal) / area2).abs();
            closest = closest.min(off);
            if off > tol {
                continue;
            }
            let wa = (b - q).cross(c - q).dot(normal) / (area2 * area2);
            let wb = (c - q).cross(a - q).dot(normal) / (area2 * area2);
            let wc = 1.0 - wa - wb;
            let worst = wa.min(wb).min(wc);
            if best.is_none_or(|(w, _)| worst > w) {
                best = Some((worst, wa * values[t[0]] + wb * values[t[1]] + wc * values[t[2]]));
            }
        }
        match best {
            Some((worst, value)) if worst >= -1e-9 => out[v] = value,
            _ => return Err(ExperimentError::OffBoundary { vertex: v, distance: closest }),
        }
    }
    Ok(out)
}
