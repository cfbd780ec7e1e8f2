//! Family runners, fits and the explicit competitor for the notched box.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::bounds::paper_lower_bound;
use super::families::{gen_convex2d, gen_convex3d, gen_nonconvex2d, gen_nonconvex3d, nonconvex3d_scale};
use super::meshes::{convex3d_mesh, graded_nonconvex2d_mesh, graded_nonconvex3d_mesh, polyhedron_trace};
use super::ExperimentError;
use crate::cdt::{constrained_delaunay, quality_report};
use crate::fem::{element_geometry, rule, DirichletSystem, ScalarField, SimplexMesh, TestFunction, TetMesh};
use crate::gbc::PolygonDiscretization;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    #[serde(rename = "convex2d")]
    Convex2d,
    #[serde(rename = "nonconvex2d")]
    Nonconvex2d,
    #[serde(rename = "convex3d")]
    Convex3d,
    #[serde(rename = "nonconvex3d")]
    Nonconvex3d,
    #[serde(rename = "class_P")]
    ClassP,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Convex2d => "convex2d",
            Self::Nonconvex2d => "nonconvex2d",
            Self::Convex3d => "convex3d",
            Self::Nonconvex3d => "nonconvex3d",
            Self::ClassP => "class_P",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Self::Convex2d | Self::Nonconvex2d => 2,
            _ => 3,
        }
    }

    /// Test function of the family: `x^2` in 2D, `x^2 + y^2` in 3D.
    pub fn default_function(self) -> TestFunction {
        if self.dim() == 2 {
            TestFunction::x_squared()
        } else {
            TestFunction::x2_plus_y2()
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "convex2d" => Ok(Self::Convex2d),
            "nonconvex2d" => Ok(Self::Nonconvex2d),
            "convex3d" => Ok(Self::Convex3d),
            "nonconvex3d" => Ok(Self::Nonconvex3d),
            "class_P" | "classP" => Ok(Self::ClassP),
            _ => Err(format!("unknown family `{s}`")),
        }
    }
}

/// A family with its parameter sweep (`h`, `d` or `eps`, strictly
/// decreasing) and the interpolated function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: Vec<f64>,
    pub u: TestFunction,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, params: Vec<f64>) -> Result<Self, ExperimentError> {
        let ok = !params.is_empty()
            && params.iter().all(|&p| p > 0.0 && p.is_finite())
            && params.windows(2).all(|w| w[1] < w[0]);
        if !ok {
            return Err(ExperimentError::BadParameters);
        }
        Ok(Self { kind, params, u: kind.default_function() })
    }
}

/// One family member's measurements. Failed members keep their parameter,
/// carry `NaN` measurements and the error message.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub family: FamilyKind,
    pub param: f64,
    pub dist: f64,
    pub c_v: f64,
    /// `|u - I u|_{H^1}`.
    pub h1_error: f64,
    /// `|u|_{H^2}`, exact.
    pub h2_seminorm: f64,
    /// `h1_error / h2_seminorm`.
    pub ratio: f64,
    /// `h1_error^2 / h2_seminorm`.
    pub ratio_squared_numerator: f64,
    /// Lower bound on `h1_error^2`, when the family has one.
    pub paper_bound: Option<f64>,
    /// Largest CDT circumradius (2D only).
    pub max_circumradius: Option<f64>,
    /// `|I u|^2_{H^1}`.
    pub interpolant_energy: f64,
    pub n_vertices: usize,
    pub n_elements: usize,
    pub error: Option<String>,
}

impl ExperimentRow {
    pub fn error_squared(&self) -> f64 {
        self.h1_error * self.h1_error
    }

    pub fn failed(&self) -> bool {
        self.error.is_some()
    }

    fn failure(kind: FamilyKind, param: f64, e: &ExperimentError) -> Self {
        Self {
            family: kind,
            param,
            dist: f64::NAN,
            c_v: f64::NAN,
            h1_error: f64::NAN,
            h2_seminorm: f64::NAN,
            ratio: f64::NAN,
            ratio_squared_numerator: f64::NAN,
            paper_bound: None,
            max_circumradius: None,
            interpolant_energy: f64::NAN,
            n_vertices: 0,
            n_elements: 0,
            error: Some(e.to_string()),
        }
    }
}

struct Measured {
    dist: f64,
    c_v: f64,
    measure: f64,
    error_squared: f64,
    energy: f64,
    max_circumradius: Option<f64>,
    n_vertices: usize,
    n_elements: usize,
}

fn measure_field<M: SimplexMesh>(f: &ScalarField<M>, u: &TestFunction) -> (f64, f64) {
    (f.h1_error_squared(u), f.energy())
}

fn solve_3d(mesh: TetMesh, p: &crate::geometry::Polyhedron, u: &TestFunction, tol: f64) -> Result<ScalarField<TetMesh>, ExperimentError> {
    let g = polyhedron_trace(p, &mesh, u)?;
    Ok(DirichletSystem::new(Arc::new(mesh)).solve(&g, tol)?)
}

fn measure(kind: FamilyKind, param: f64, u: &TestFunction, level: usize, tol: f64) -> Result<Measured, ExperimentError> {
    match kind {
        FamilyKind::Convex2d | FamilyKind::Nonconvex2d => {
            let inst = if kind == FamilyKind::Convex2d { gen_convex2d(param)? } else { gen_nonconvex2d(param, true)? };
            let p = &inst.polygon;
            let values: Vec<f64> = p.vertices().iter().map(|v| u.eval(v.to_array())).collect();
            let cdt = constrained_delaunay(p)?;
            let r_star = quality_report(&cdt, p).max_circumradius;
            let disc = if kind == FamilyKind::Convex2d {
                PolygonDiscretization::new(p, level)?
            } else {
                PolygonDiscretization::from_mesh(p, graded_nonconvex2d_mesh(&inst, level)?)?
            };
            let f = disc.harmonic_interpolant(&values, tol)?;
            let (error_squared, energy) = measure_field(&f, u);
            Ok(Measured {
                dist: inst.dist,
                c_v: inst.c_v,
                measure: p.area(),
                error_squared,
                energy,
                max_circumradius: Some(r_star),
                n_vertices: disc.mesh().n_vertices(),
                n_elements: disc.mesh().n_elements(),
            })
        }
        FamilyKind::Convex3d | FamilyKind::Nonconvex3d => {
            let (inst, mesh) = if kind == FamilyKind::Convex3d {
                let inst = gen_convex3d(param)?;
                let mesh = convex3d_mesh(&inst, level)?;
                (inst, mesh)
            } else {
                let inst = gen_nonconvex3d(param)?;
                let mesh = graded_nonconvex3d_mesh(&inst, level)?;
                (inst, mesh)
            };
            let (nv, ne) = (mesh.n_vertices(), mesh.n_elements());
            let f = solve_3d(mesh, &inst.polyhedron, u, tol)?;
            let (error_squared, energy) = measure_field(&f, u);
            Ok(Measured {
                dist: inst.dist,
                c_v: inst.c_v,
                measure: inst.polyhedron.volume(),
                error_squared,
                energy,
                max_circumradius: None,
                n_vertices: nv,
                n_elements: ne,
            })
        }
        FamilyKind::ClassP => Err(ExperimentError::NotRunnable("class_P")),
    }
}

/// Measures one family member at refinement `level` with solver tolerance `tol`.
pub fn run_instance(kind: FamilyKind, param: f64, u: &TestFunction, level: usize, tol: f64) -> ExperimentRow {
    match measure(kind, param, u, level, tol) {
        Ok(m) => {
            let h1_error = m.error_squared.sqrt();
            let h2 = u.h2_seminorm(kind.dim(), m.measure);
            ExperimentRow {
                family: kind,
                param,
                dist: m.dist,
                c_v: m.c_v,
                h1_error,
                h2_seminorm: h2,
                ratio: h1_error / h2,
                ratio_squared_numerator: m.error_squared / h2,
                paper_bound: paper_lower_bound(kind, m.c_v, m.dist).ok(),
                max_circumradius: m.max_circumradius,
                interpolant_energy: m.energy,
                n_vertices: m.n_vertices,
                n_elements: m.n_elements,
                error: None,
            }
        }
        Err(e) => ExperimentRow::failure(kind, param, &e),
    }
}

/// Runs every parameter of the family, members in parallel, rows in
/// parameter order.
pub fn run_family(spec: &FamilySpec, level: usize, tol: f64) -> Result<Vec<ExperimentRow>, ExperimentError> {
    if spec.kind == FamilyKind::ClassP {
        return Err(ExperimentError::NotRunnable("class_P"));
    }
    Ok(spec.params.par_iter().map(|&p| run_instance(spec.kind, p, &spec.u, level, tol)).collect())
}

/// Column of an [`ExperimentRow`] used in fits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowField {
    Param,
    Dist,
    H1Error,
    ErrorSquared,
    Ratio,
    PaperBound,
}

impl RowField {
    fn get(self, r: &ExperimentRow) -> f64 {
        match self {
            Self::Param => r.param,
            Self::Dist => r.dist,
            Self::H1Error => r.h1_error,
            Self::ErrorSquared => r.error_squared(),
            Self::Ratio => r.ratio,
            Self::PaperBound => r.paper_bound.unwrap_or(f64::NAN),
        }
    }
}

/// Least-squares line with its coefficient of determination.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit, ExperimentError> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(ExperimentError::BadData("need at least two paired values"));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(ExperimentError::BadData("non-finite data"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(ExperimentError::BadData("all x values coincide"));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LinearFit { slope, intercept: my - slope * mx, r_squared })
}

/// Slope of `log y` against `log x` over at least three rows.
pub fn fit_loglog_slope(rows: &[ExperimentRow], x: RowField, y: RowField) -> Result<f64, ExperimentError> {
    if rows.len() < 3 {
        return Err(ExperimentError::BadData("need at least three rows"));
    }
    let (mut xs, mut ys) = (Vec::with_capacity(rows.len()), Vec::with_capacity(rows.len()));
    for r in rows {
        let (a, b) = (x.get(r), y.get(r));
        if !(a > 0.0 && b > 0.0) {
            return Err(ExperimentError::BadData("log-log fit needs positive data"));
        }
        xs.push(a.ln());
        ys.push(b.ln());
    }
    Ok(linear_fit(&xs, &ys)?.slope)
}

/// Competitor for the harmonic interpolant of `x^2 + y^2` on the unscaled
/// notched box:
///
/// `w = max(2 - t (2 - min(q, 1)), q)` with `q = |x| + |y|`,
/// `t = z / f` and `f = eps + (1 - eps) max(|x|, |y|)`.
///
/// It equals the boundary data on the floor (where `t = 0`), on the walls
/// (where `f = 1`), and on the roof, where `t >= 1` makes the second branch
/// win. Returns the value and gradient.
pub fn competitor_value(eps: f64, x: [f64; 3]) -> (f64, [f64; 3]) {
    let (ax, ay, z) = (x[0].abs(), x[1].abs(), x[2]);
    let (sx, sy) = (x[0].signum(), x[1].signum());
    let q = ax + ay;
    let dq = [sx, sy, 0.0];
    let (m, dm) = if ax >= ay { (ax, [sx, 0.0, 0.0]) } else { (ay, [0.0, sy, 0.0]) };
    let f = eps + (1.0 - eps) * m;
    let t = z / f;
    let dt = [-z * (1.0 - eps) * dm[0] / (f * f), -z * (1.0 - eps) * dm[1] / (f * f), 1.0 / f];
    let (qc, dqc) = if q < 1.0 { (q, dq) } else { (1.0, [0.0; 3]) };
    let a = 2.0 - t * (2.0 - qc);
    if a >= q {
        let g = [0, 1, 2].map(|k| -dt[k] * (2.0 - qc) + t * dqc[k]);
        (a, g)
    } else {
        (q, dq)
    }
}

/// Dirichlet energies on the scaled notched box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CompetitorReport {
    pub eps: f64,
    /// `|w|^2_{H^1}` by quadrature on the graded mesh.
    pub competitor_energy: f64,
    /// `|I_h u|^2_{H^1}` of the discrete harmonic interpolant.
    pub discrete_energy: f64,
    /// Largest mismatch between `w` and the boundary data at boundary nodes.
    pub trace_mismatch: f64,
}

/// Energy of the explicit competitor next to the discrete harmonic energy.
pub fn competitor_energy(eps: f64, level: usize, tol: f64) -> Result<CompetitorReport, ExperimentError> {
    let inst = gen_nonconvex3d(eps)?;
    let mesh = graded_nonconvex3d_mesh(&inst, level)?;
    let s = nonconvex3d_scale();
    let u = TestFunction::x2_plus_y2();
    let g = polyhedron_trace(&inst.polyhedron, &mesh, &u)?;
    let flags = mesh.boundary_vertex_flags();
    let trace_mismatch = (0..mesh.n_vertices())
        .filter(|&v| flags[v])
        .map(|v| {
            let p = mesh.point(v).map(|c| c / s);
            (s * s * competitor_value(eps, p).0 - g[v]).abs()
        })
        .fold(0.0, f64::max);
    let energy: f64 = (0..mesh.n_elements())
        .into_par_iter()
        .map(|e| {
            let geo = element_geometry(&mesh, e);
            let pts = mesh.tet_points(e);
            rule(3)
                .iter()
                .map(|(lam, w)| {
                    let mut x = [0.0; 3];
                    for (k, p) in pts.iter().enumerate() {
                        x[0] += lam[k] * p.x / s;
                        x[1] += lam[k] * p.y / s;
                        x[2] += lam[k] * p.z / s;
                    }
                    let grad = competitor_value(eps, x).1;
                    // Gradient of s^2 w(x / s) is s grad w.
                    w * s * s * (grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2])
                })
                .sum::<f64>()
                * geo.measure
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let f = DirichletSystem::new(Arc::new(mesh)).solve(&g, tol)?;
    Ok(CompetitorReport { eps, competitor_energy: energy, discrete_energy: f.energy(), trace_mismatch })
}

/// Integrals over the quarter `x > 0, y > 0` of the notched box next to the
/// full-domain values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuarterCheck {
    pub full_u_integral: f64,
    pub quarter_u_integral: f64,
    pub full_error_squared: f64,
    pub quarter_error_squared: f64,
    pub quarter_volume: f64,
    pub full_volume: f64,
}

pub fn quarter_symmetry(eps: f64, level: usize, tol: f64) -> Result<QuarterCheck, ExperimentError> {
    let inst = gen_nonconvex3d(eps)?;
    let mesh = graded_nonconvex3d_mesh(&inst, level)?;
    let u = TestFunction::x2_plus_y2();
    let g = polyhedron_trace(&inst.polyhedron, &mesh, &u)?;
    let f = DirichletSystem::new(Arc::new(mesh)).solve(&g, tol)?;
    let m = f.mesh().clone();
    let mut out = QuarterCheck {
        full_u_integral: 0.0,
        quarter_u_integral: 0.0,
        full_error_squared: 0.0,
        quarter_error_squared: 0.0,
        quarter_volume: 0.0,
        full_volume: 0.0,
    };
    for e in 0..m.n_elements() {
        let geo = element_geometry(m.as_ref(), e);
        let pts = m.tet_points(e);
        let gf = f.element_gradient(e);
        let (mut ui, mut ei) = (0.0, 0.0);
        for (lam, w) in rule(3) {
            let mut x = [0.0; 3];
            for (k, p) in pts.iter().enumerate() {
                x[0] += lam[k] * p.x;
                x[1] += lam[k] * p.y;
                x[2] += lam[k] * p.z;
            }
            let gu = u.gradient(x);
            ui += w * u.eval(x);
            ei += w * ((gu[0] - gf[0]).powi(2) + (gu[1] - gf[1]).powi(2) + (gu[2] - gf[2]).powi(2));
        }
        let (ui, ei) = (ui * geo.measure, ei * geo.measure);
        out.full_u_integral += ui;
        out.full_error_squared += ei;
        out.full_volume += geo.measure;
        let c = pts.iter().fold([0.0; 2], |acc, p| [acc[0] + p.x, acc[1] + p.y]);
        if c[0] > 0.0 && c[1] > 0.0 {
            out.quarter_u_integral += ui;
            out.quarter_error_squared += ei;
            out.quarter_volume += geo.measure;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_rejects_bad_params() {
        assert!(FamilySpec::new(FamilyKind::Convex2d, vec![]).is_err());
        assert!(FamilySpec::new(FamilyKind::Convex2d, vec![0.1, 0.2]).is_err());
        assert!(FamilySpec::new(FamilyKind::Convex2d, vec![0.2, -0.1]).is_err());
        assert!(FamilySpec::new(FamilyKind::Convex2d, vec![0.2, 0.1]).is_ok());
    }

    #[test]
    fn competitor_matches_data_on_walls_and_roof() {
        let eps = 0.1;
        let data = |x: f64, y: f64, z: f64| -> f64 {
            if z == 0.0 {
                2.0
            } else if x.abs() == 1.0 {
                (2.0 - z).max(1.0 + y.abs())
            } else if y.abs() == 1.0 {
                (2.0 - z).max(1.0 + x.abs())
            } else {
                x.abs() + y.abs()
            }
        };
        for &(x, y, z) in &[(1.0, 0.3, 0.4), (1.0, -0.8, 0.9), (-0.2, 1.0, 0.5), (0.3, 0.2, 0.0), (0.6, 0.6, 1.0)] {
            assert!((competitor_value(eps, [x, y, z]).0 - data(x, y, z)).abs() < 1e-14);
        }
        // Roof of the notch.
        let (x, y) = (0.2, 0.3);
        let z = eps + (1.0 - eps) * (x + y);
        assert!((competitor_value(eps, [x, y, z]).0 - (x + y)).abs() < 1e-14);
    }
}
