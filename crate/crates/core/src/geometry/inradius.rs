//! Largest inscribed ball of a convex body given by half-spaces.
//!
//! The center `x` and radius `r` maximize `r` subject to
//! `n_i . x + r <= b_i` for unit normals `n_i`. This is a small linear
//! program solved with a dense tableau simplex method using Bland's rule.

use super::{GeometryError, Point2, Point3, Polygon, Polyhedron};

const EPS: f64 = 1e-12;

/// Chebyshev center of `{x : n_i . x <= b_i}`; `normals` need not be unit.
///
/// `interior` must be a point strictly inside the region; it makes the
/// initial slack basis feasible after translation.
pub fn chebyshev_center(
    normals: &[Vec<f64>],
    offsets: &[f64],
    interior: &[f64],
) -> Result<(Vec<f64>, f64), GeometryError> {
    let dim = interior.len();
    let m = normals.len();
    // Columns: x+ (dim), x- (dim), r, slacks (m), rhs.
    let nv = 2 * dim + 1;
    let width = nv + m + 1;
    let mut tab = vec![vec![0.0; width]; m + 1];
    for (i, (n, &b)) in normals.iter().zip(offsets).enumerate() {
        let len = n.iter().map(|v| v * v).sum::<f64>().sqrt();
        if len == 0.0 {
            return Err(GeometryError::LinearProgram("zero normal"));
        }
        let shifted = b - n.iter().zip(interior).map(|(a, c)| a * c).sum::<f64>();
        if shifted <= 0.0 {
            return Err(GeometryError::LinearProgram("start point is not interior"));
        }
        let row = &mut tab[i];
        for k in 0..dim {
            row[k] = n[k] / len;
            row[dim + k] = -n[k] / len;
        }
        row[2 * dim] = 1.0;
        row[nv + i] = 1.0;
        row[width - 1] = shifted / len;
    }
    // Objective row holds -c so that optimality means no negative entries.
    tab[m][2 * dim] = -1.0;
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    let max_iter = 50 * (m + nv) + 100;
    for _ in 0..max_iter {
        let Some(col) = (0..width - 1).find(|&j| tab[m][j] < -EPS) else {
            let mut z = vec![0.0; nv];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < nv {
                    z[bv] = tab[i][width - 1];
                }
            }
            let center = (0..dim).map(|k| interior[k] + z[k] - z[dim + k]).collect();
            return Ok((center, z[2 * dim]));
        };
        let mut pivot: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = tab[i][col];
            if a > EPS {
                let ratio = tab[i][width - 1] / a;
                let better = match pivot {
                    None => true,
                    Some((pi, pr)) => ratio < pr - EPS || (ratio <= pr + EPS && basis[i] < basis[pi]),
                };
                if better {
                    pivot = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = pivot else {
            return Err(GeometryError::LinearProgram("unbounded region"));
        };
        let p = tab[row][col];
        tab[row].iter_mut().for_each(|v| *v /= p);
        let pivot_row = tab[row].clone();
        for (i, r) in tab.iter_mut().enumerate() {
            if i != row {
                let f = r[col];
                if f != 0.0 {
                    r.iter_mut().zip(&pivot_row).for_each(|(v, &pv)| *v -= f * pv);
                }
            }
        }
        basis[row] = col;
    }
    Err(GeometryError::LinearProgram("iteration limit"))
}

/// Inscribed circle of a convex polygon.
pub fn inradius_convex_polygon(p: &Polygon) -> Result<(Point2, f64), GeometryError> {
    if !p.is_convex() {
        return Err(GeometryError::NotConvex);
    }
    let mut normals = Vec::new();
    let mut offsets = Vec::new();
    for (a, b) in p.edges() {
        // Outward normal of a counter-clockwise edge.
        let n = Point2::new(b.y - a.y, a.x - b.x);
        normals.push(vec![n.x, n.y]);
        offsets.push(n.dot(a));
    }
    let k = p.len() as f64;
    let c = p.vertices().iter().fold(Point2::default(), |s, &v| s + v) * (1.0 / k);
    let (x, r) = chebyshev_center(&normals, &offsets, &[c.x, c.y])?;
    Ok((Point2::new(x[0], x[1]), r))
}

/// Inscribed sphere of a convex polyhedron.
pub fn inradius_convex_polyhedron(p: &Polyhedron) -> Result<(Point3, f64), GeometryError> {
    if !p.is_convex() {
        return Err(GeometryError::NotConvex);
    }
    let mut normals = Vec::new();
    let mut offsets = Vec::new();
    for f in 0..p.faces().len() {
        let plane = p.face_plane(f);
        normals.push(plane.normal.to_array().to_vec());
        offsets.push(plane.offset);
    }
    let k = p.vertices().len() as f64;
    let c = p.vertices().iter().fold(Point3::default(), |s, &v| s + v) * (1.0 / k);
    let (x, r) = chebyshev_center(&normals, &offsets, &c.to_array())?;
    Ok((Point3::new(x[0], x[1], x[2]), r))
}
