//! Checks of the coordinate properties on discrete harmonic coordinates.

use rand::Rng;
use serde::Serialize;

use super::harmonic::{harmonic_coordinates, HarmonicCoordinateSet, PolygonDiscretization};
use super::GbcError;
use crate::fem::TestFunction;
use crate::geometry::{Point2, Polygon};

/// Rotation by `angle`, uniform scaling and translation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Similarity {
    pub angle: f64,
    pub scale: f64,
    pub shift: Point2,
}

impl Similarity {
    pub fn identity() -> Self {
        Self { angle: 0.0, scale: 1.0, shift: Point2::default() }
    }

    pub fn random(rng: &mut impl Rng) -> Self {
        Self {
            angle: rng.random_range(0.0..std::f64::consts::TAU),
            scale: rng.random_range(0.3..3.0),
            shift: Point2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)),
        }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let (s, c) = self.angle.sin_cos();
        Point2::new(
            self.scale * (c * p.x - s * p.y) + self.shift.x,
            self.scale * (s * p.x + c * p.y) + self.shift.y,
        )
    }
}

/// Largest violation of each coordinate property.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    /// `max(-lambda_i)` over mesh nodes, floored at zero.
    pub non_negativity: f64,
    /// `max |sum L(v_i) lambda_i - L|` over `L` in `{1, x, y}`.
    pub linear_completeness: f64,
    /// `max |lambda_i(x) - lambda_i^F(F(x))|` over the samples.
    pub invariance: f64,
    pub partition_of_unity: f64,
    /// `max |sum v_i lambda_i(x) - x|`.
    pub linear_precision: f64,
    /// `max |lambda_i(v_j) - delta_ij|`.
    pub interpolation: f64,
    pub tolerance: f64,
}

impl AxiomReport {
    pub fn violations(&self) -> [f64; 6] {
        [
            self.non_negativity,
            self.linear_completeness,
            self.invariance,
            self.partition_of_unity,
            self.linear_precision,
            self.interpolation,
        ]
    }

    /// Pass flag per property, in the same order as [`AxiomReport::violations`].
    pub fn passed(&self) -> [bool; 6] {
        self.violations().map(|v| v <= self.tolerance)
    }
}

/// Uniform samples inside the polygon by rejection from its bounding box.
pub fn interior_samples(p: &Polygon, n: usize, rng: &mut impl Rng) -> Vec<Point2> {
    let (lo, hi) = p.bounding_box();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let q = Point2::new(rng.random_range(lo.x..=hi.x), rng.random_range(lo.y..=hi.y));
        if p.contains(q) && !p.on_boundary(q) {
            out.push(q);
        }
    }
    out
}

/// Properties that need no recomputation: everything except invariance.
pub fn static_axioms(c: &HarmonicCoordinateSet) -> [f64; 5] {
    let vs = c.polygon.vertices();
    let n_nodes = c.mesh.vertices().len();
    let (mut neg, mut lin, mut pou, mut prec, mut interp) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for v in 0..n_nodes {
        let x = c.mesh.vertices()[v];
        let lam = c.at_node(v);
        let sum: f64 = lam.iter().sum();
        let sx: f64 = lam.iter().zip(vs).map(|(l, p)| l * p.x).sum();
        let sy: f64 = lam.iter().zip(vs).map(|(l, p)| l * p.y).sum();
        neg = neg.max(lam.iter().map(|&l| -l).fold(0.0, f64::max));
        pou = pou.max((sum - 1.0).abs());
        lin = lin.max((sum - 1.0).abs()).max((sx - x.x).abs()).max((sy - x.y).abs());
        prec = prec.max((sx - x.x).hypot(sy - x.y));
    }
    for (j, &node) in c.corner_nodes.iter().enumerate() {
        for (i, f) in c.coords.iter().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            interp = interp.max((f.value_at_vertex(node) - delta).abs());
        }
    }
    [neg, lin, pou, prec, interp]
}

/// Largest difference between the coordinates at `samples` and those of
/// the transformed polygon at the transformed samples. Samples that fall
/// outside either mesh are skipped.
pub fn invariance_violation(c: &HarmonicCoordinateSet, samples: &[Point2], f: Similarity) -> Result<f64, GbcError> {
    let mapped = c.polygon.map(|p| f.apply(p))?;
    let other = harmonic_coordinates(&mapped, c.level, c.tol)?;
    let (loc, other_loc) = (c.locator(), other.locator());
    let mut worst = 0.0_f64;
    for &x in samples {
        let (Some(a), Some(b)) = (c.evaluate(&loc, x), other.evaluate(&other_loc, f.apply(x))) else {
            continue;
        };
        for (ai, bi) in a.iter().zip(&b) {
            worst = worst.max((ai - bi).abs());
        }
    }
    Ok(worst)
}

pub fn axiom_check(
    c: &HarmonicCoordinateSet,
    samples: &[Point2],
    f: Similarity,
    tolerance: f64,
) -> Result<AxiomReport, GbcError> {
    let [neg, lin, pou, prec, interp] = static_axioms(c);
    Ok(AxiomReport {
        non_negativity: neg,
        linear_completeness: lin,
        invariance: invariance_violation(c, samples, f)?,
        partition_of_unity: pou,
        linear_precision: prec,
        interpolation: interp,
        tolerance,
    })
}

/// Energies of the harmonic and of the CDT interpolant of `u`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DirichletComparison {
    pub harmonic_energy: f64,
    pub triangulation_energy: f64,
}

pub fn dirichlet_compare_on(d: &PolygonDiscretization, u: &TestFunction, tol: f64) -> Result<DirichletComparison, GbcError> {
    let values: Vec<f64> = d.polygon().vertices().iter().map(|v| u.eval(v.to_array())).collect();
    let harmonic = d.harmonic_interpolant(&values, tol)?;
    let tri = d.triangulation_interpolant(&values)?;
    Ok(DirichletComparison { harmonic_energy: harmonic.energy(), triangulation_energy: tri.energy() })
}

pub fn dirichlet_compare(p: &Polygon, u: &TestFunction, level: usize, tol: f64) -> Result<DirichletComparison, GbcError> {
    dirichlet_compare_on(&PolygonDiscretization::new(p, level)?, u, tol)
}
