use std::sync::Arc;

use rayon::prelude::*;

use super::mesh::{dot, element_geometry, SimplexMesh};
use super::quadrature::{rule, TestFunction};
use super::FemError;
use crate::cdt::TriMesh;
use crate::geometry::Point2;

/// A piecewise-linear function, one coefficient per mesh vertex.
#[derive(Clone, Debug)]
pub struct ScalarField<M> {
    mesh: Arc<M>,
    coefficients: Vec<f64>,
}

impl<M: SimplexMesh> ScalarField<M> {
    pub fn new(mesh: Arc<M>, coefficients: Vec<f64>) -> Result<Self, FemError> {
        if coefficients.len() != mesh.n_vertices() {
            return Err(FemError::SizeMismatch { expected: mesh.n_vertices(), got: coefficients.len() });
        }
        Ok(Self { mesh, coefficients })
    }

    /// Nodal interpolant of `f`.
    pub fn interpolate(mesh: Arc<M>, f: impl Fn([f64; 3]) -> f64) -> Self {
        let coefficients = (0..mesh.n_vertices()).map(|v| f(mesh.point(v))).collect();
        Self { mesh, coefficients }
    }

    pub fn mesh(&self) -> &Arc<M> {
        &self.mesh
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<f64> {
        self.coefficients
    }

    pub fn value_at_vertex(&self, v: usize) -> f64 {
        self.coefficients[v]
    }

    /// Constant gradient of the field on element `e`.
    pub fn element_gradient(&self, e: usize) -> [f64; 3] {
        let g = element_geometry(self.mesh.as_ref(), e);
        let vs = self.mesh.element(e);
        let mut out = [0.0; 3];
        for (k, &v) in vs.iter().enumerate() {
            for (o, gd) in out.iter_mut().zip(g.grads[k]) {
                *o += self.coefficients[v] * gd;
            }
        }
        out
    }

    /// Sums a per-element term in element order.
    fn sum_elements(&self, term: impl Fn(usize, f64) -> f64 + Sync + Send) -> f64 {
        let parts: Vec<f64> = (0..self.mesh.n_elements())
            .into_par_iter()
            .map(|e| term(e, element_geometry(self.mesh.as_ref(), e).measure))
            .collect();
        parts.iter().sum()
    }

    /// `|f|^2_{H^1}`.
    pub fn energy(&self) -> f64 {
        self.sum_elements(|e, vol| {
            let g = self.element_gradient(e);
            dot(g, g) * vol
        })
    }

    /// `|f|_{H^1}`, exact for piecewise-linear fields.
    pub fn h1_seminorm(&self) -> f64 {
        self.energy().sqrt()
    }

    /// `|u - f|^2_{H^1}` by degree-2 quadrature, exact for quadratic `u`.
    pub fn h1_error_squared(&self, u: &TestFunction) -> f64 {
        let dim = self.mesh.dim();
        self.sum_elements(|e, vol| {
            let gf = self.element_gradient(e);
            let verts = self.mesh.element(e);
            rule(dim)
                .iter()
                .map(|(lam, w)| {
                    let mut x = [0.0; 3];
                    for (k, &v) in verts.iter().enumerate() {
                        let p = self.mesh.point(v);
                        for d in 0..3 {
                            x[d] += lam[k] * p[d];
                        }
                    }
                    let gu = u.gradient(x);
                    let diff = [gu[0] - gf[0], gu[1] - gf[1], gu[2] - gf[2]];
                    w * dot(diff, diff)
                })
                .sum::<f64>()
                * vol
        })
    }

    pub fn h1_error_seminorm(&self, u: &TestFunction) -> f64 {
        self.h1_error_squared(u).sqrt()
    }

    /// `int (df/d direction)^2` over the elements whose vertices all satisfy
    /// `region`. `direction` is used as given.
    pub fn directional_energy(&self, direction: [f64; 3], region: impl Fn([f64; 3]) -> bool + Sync + Send) -> f64 {
        self.sum_elements(|e, vol| {
            if !self.mesh.element(e).iter().all(|&v| region(self.mesh.point(v))) {
                return 0.0;
            }
            let g = self.element_gradient(e);
            dot(g, direction).powi(2) * vol
        })
    }

    /// Largest excursion of the coefficients outside `[lo, hi]`.
    pub fn range_violation(&self, lo: f64, hi: f64) -> f64 {
        self.coefficients
            .iter()
            .map(|&c| (lo - c).max(c - hi).max(0.0))
            .fold(0.0, f64::max)
    }
}

/// Finds the triangle containing a point through a uniform bucket grid.
pub struct PointLocator {
    mesh: Arc<TriMesh>,
    lo: Point2,
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<usize>>,
}

impl PointLocator {
    pub fn new(mesh: Arc<TriMesh>) -> Self {
        let vs = mesh.vertices();
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in vs {
            lo = Point2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        let n_tri = mesh.triangles().len().max(1) as f64;
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        let cell = span / n_tri.sqrt().clamp(1.0, 512.0);
        let nx = (((hi.x - lo.x) / cell).floor() as usize + 1).max(1);
        let ny = (((hi.y - lo.y) / cell).floor() as usize + 1).max(1);
        let mut buckets = vec![Vec::new(); nx * ny];
        for t in 0..mesh.triangles().len() {
            let p = mesh.triangle_points(t);
            let (mut bx0, mut by0, mut bx1, mut by1) = (usize::MAX, usize::MAX, 0, 0);
            for q in p {
                let (cx, cy) = Self::cell_of(lo, cell, nx, ny, q);
                bx0 = bx0.min(cx);
                by0 = by0.min(cy);
                bx1 = bx1.max(cx);
                by1 = by1.max(cy);
            }
            for cy in by0..=by1 {
                for cx in bx0..=bx1 {
                    buckets[cy * nx + cx].push(t);
                }
            }
        }
        Self { mesh, lo, cell, nx, ny, buckets }
    }

    fn cell_of(lo: Point2, cell: f64, nx: usize, ny: usize, p: Point2) -> (usize, usize) {
        let cx = (((p.x - lo.x) / cell).floor().max(0.0) as usize).min(nx - 1);
        let cy = (((p.y - lo.y) / cell).floor().max(0.0) as usize).min(ny - 1);
        (cx, cy)
    }

    /// Triangle holding `p` and its barycentric coordinates; points within
    /// `1e-12` (relative) of a triangle count as inside.
    pub fn locate(&self, p: Point2) -> Option<(usize, [f64; 3])> {
        let (cx, cy) = Self::cell_of(self.lo, self.cell, self.nx, self.ny, p);
        let mut best: Option<(usize, [f64; 3], f64)> = None;
        for &t in &self.buckets[cy * self.nx + cx] {
            let [a, b, c] = self.mesh.triangle_points(t);
            let det = (b - a).cross(c - a);
            let wb = (p - a).cross(c - a) / det;
            let wc = (b - a).cross(p - a) / det;
            let w = [1.0 - wb - wc, wb, wc];
            let worst = w.iter().copied().fold(f64::INFINITY, f64::min);
            if best.as_ref().is_none_or(|&(_, _, s)| worst > s) {
                best = Some((t, w, worst));
            }
        }
        best.filter(|&(_, _, s)| s >= -1e-12).map(|(t, w, _)| (t, w))
    }

    /// Value of a field on this mesh at `p`.
    pub fn evaluate(&self, field: &ScalarField<TriMesh>, p: Point2) -> Option<f64> {
        let (t, w) = self.locate(p)?;
        let tri = self.mesh.triangles()[t];
        Some((0..3).map(|k| w[k] * field.coefficients()[tri[k]]).sum())
    }
}
