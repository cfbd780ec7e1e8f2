//! Random domains and fixtures shared by the integration tests.
#![allow(dead_code)]

use gbclab::geometry::{Point2, Polygon};
use rand::Rng;

pub fn polygon(v: &[(f64, f64)]) -> Polygon {
    Polygon::new_any_orientation(v.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
}

/// Convex polygon with `n` vertices on a randomly stretched unit circle.
pub fn random_convex_polygon(n: usize, rng: &mut impl Rng) -> Polygon {
    let step = std::f64::consts::TAU / n as f64;
    let (sx, sy) = (rng.random_range(0.5..1.5), rng.random_range(0.5..1.5));
    let turn = rng.random_range(0.0..std::f64::consts::TAU);
    let (s, c) = turn.sin_cos();
    let pts = (0..n)
        .map(|k| {
            let a = step * (k as f64 + rng.random_range(-0.35..0.35));
            let (x, y) = (sx * a.cos(), sy * a.sin());
            Point2::new(c * x - s * y, s * x + c * y)
        })
        .collect();
    Polygon::new(pts).unwrap()
}

/// Star-shaped polygon with `n` vertices; simple by construction.
pub fn random_star_polygon(n: usize, rng: &mut impl Rng) -> Polygon {
    let step = std::f64::consts::TAU / n as f64;
    let pts = (0..n)
        .map(|k| {
            let a = step * (k as f64 + rng.random_range(-0.35..0.35));
            let r = rng.random_range(0.3..1.0);
            Point2::new(r * a.cos(), r * a.sin())
        })
        .collect();
    Polygon::new(pts).unwrap()
}

/// Star-shaped polygon that is not convex.
pub fn random_nonconvex_polygon(n: usize, rng: &mut impl Rng) -> Polygon {
    loop {
        let p = random_star_polygon(n, rng);
        if !p.is_convex() {
            return p;
        }
    }
}

/// Non-convex shapes whose discrete coordinates dip below zero on coarse
/// meshes.
pub fn negativity_fixtures() -> Vec<(&'static str, Polygon)> {
    vec![
        ("notch 0.3", polygon(&[(-1., 0.), (1., 0.), (1., 1.), (0., 0.3), (-1., 1.)])),
        ("notch 0.5", polygon(&[(-1., 0.), (1., 0.), (1., 1.), (0., 0.5), (-1., 1.)])),
        (
            "comb",
            polygon(&[(0., 0.), (3., 0.), (3., 2.), (2.5, 2.), (2., 0.7), (1.5, 2.), (1., 0.7), (0.5, 2.), (0., 2.)]),
        ),
        ("spike", polygon(&[(0., 0.), (4., 0.), (4., 1.), (2.2, 1.), (2., 3.), (1.8, 1.), (0., 1.)])),
        ("arrow", polygon(&[(0., 0.), (2., 1.), (0., 2.), (0.6, 1.)])),
    ]
}

/// Copy of `p` scaled to unit diameter.
pub fn unit_diameter(p: &Polygon) -> Polygon {
    let s = 1.0 / p.diameter();
    p.map(|q| q * s).unwrap()
}

/// Named unit-diameter polygons used across the suites.
pub fn unit_fixtures() -> Vec<(&'static str, Polygon)> {
    let hexagon: Vec<(f64, f64)> = (0..6)
        .map(|k| {
            let a = std::f64::consts::FRAC_PI_3 * k as f64;
            (0.5 * a.cos(), 0.5 * a.sin())
        })
        .collect();
    let mut out = vec![
        ("square", polygon(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])),
        ("triangle", polygon(&[(0., 0.), (1., 0.), (0.5, 0.75f64.sqrt())])),
        ("hexagon", polygon(&hexagon)),
        ("notch 0.1", polygon(&[(-1., 0.), (1., 0.), (1., 1.), (0., 0.1), (-1., 1.)])),
    ];
    out.extend(negativity_fixtures());
    out.into_iter().map(|(n, p)| (n, unit_diameter(&p))).collect()
}

/// Unit-diameter polygons whose constrained Delaunay triangulation has
/// every circumradius below half the diameter.
pub fn small_circumradius_polygons() -> Vec<(&'static str, Polygon)> {
    let mut strip: Vec<(f64, f64)> = (0..=10).map(|k| (k as f64, 0.0)).collect();
    strip.extend((0..=10).rev().map(|k| (k as f64, 1.0)));
    vec![
        ("L-shape", polygon(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)])),
        ("subdivided strip", polygon(&strip)),
    ]
    .into_iter()
    .map(|(n, p)| (n, unit_diameter(&p)))
    .collect()
}
