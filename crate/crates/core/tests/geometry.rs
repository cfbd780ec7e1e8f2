mod common;

use std::cmp::Ordering;

use approx::assert_relative_eq;
use gbclab::geometry::*;
use proptest::prelude::*;

/// Points on a dyadic lattice, so small integer determinants are exact.
fn lattice(x: i64, y: i64) -> Point2 {
    Point2::new(x as f64 / 1024.0, y as f64 / 1024.0)
}

fn exact_orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i8 {
    let det = (b.0 - a.0) as i128 * (c.1 - a.1) as i128 - (b.1 - a.1) as i128 * (c.0 - a.0) as i128;
    det.signum() as i8
}

fn exact_incircle(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> Ordering {
    let row = |p: (i64, i64)| {
        let (x, y) = ((p.0 - d.0) as i128, (p.1 - d.1) as i128);
        [x, y, x * x + y * y]
    };
    let [ra, rb, rc] = [row(a), row(b), row(c)];
    let det = ra[0] * (rb[1] * rc[2] - rb[2] * rc[1]) - ra[1] * (rb[0] * rc[2] - rb[2] * rc[0])
        + ra[2] * (rb[0] * rc[1] - rb[1] * rc[0]);
    det.cmp(&0)
}

fn pt() -> impl Strategy<Value = (i64, i64)> {
    (-4096i64..4096, -4096i64..4096)
}

proptest! {
    #[test]
    fn orientation_matches_integer_determinant(a in pt(), b in pt(), c in pt()) {
        let got = orient2d(lattice(a.0, a.1), lattice(b.0, b.1), lattice(c.0, c.1)).sign();
        prop_assert_eq!(got, exact_orient(a, b, c));
        let swapped = orient2d(lattice(b.0, b.1), lattice(a.0, a.1), lattice(c.0, c.1)).sign();
        prop_assert_eq!(swapped, -got);
        let rotated = orient2d(lattice(b.0, b.1), lattice(c.0, c.1), lattice(a.0, a.1)).sign();
        prop_assert_eq!(rotated, got);
    }

    #[test]
    fn incircle_matches_integer_determinant(a in pt(), b in pt(), c in pt(), d in pt()) {
        let s = exact_orient(a, b, c);
        prop_assume!(s != 0);
        let (b, c) = if s > 0 { (b, c) } else { (c, b) };
        let got = incircle(lattice(a.0, a.1), lattice(b.0, b.1), lattice(c.0, c.1), lattice(d.0, d.1));
        prop_assert_eq!(got, exact_incircle(a, b, c, d));
    }

    #[test]
    fn circumcenter_is_equidistant(a in pt(), b in pt(), c in pt()) {
        prop_assume!(exact_orient(a, b, c) != 0);
        let (pa, pb, pc) = (lattice(a.0, a.1), lattice(b.0, b.1), lattice(c.0, c.1));
        prop_assume!(triangle_area(pa, pb, pc) > 1e-3);
        let (o, r) = circumcircle(pa, pb, pc).unwrap();
        for p in [pa, pb, pc] {
            prop_assert!((o.dist(p) - r).abs() <= 1e-9 * r.max(1.0));
        }
        let q = triangle_quality(pa, pb, pc).unwrap();
        prop_assert!(q.inradius <= 0.5 * q.circumradius * (1.0 + 1e-9));
        prop_assert!(2.0 * q.circumradius >= q.diameter * (1.0 - 1e-12));
    }

    #[test]
    fn tet_quality_is_similarity_invariant(
        coords in prop::array::uniform12(-1.0f64..1.0),
        scale in 0.1f64..10.0,
        shift in prop::array::uniform3(-5.0f64..5.0),
    ) {
        let t: [Point3; 4] = std::array::from_fn(|k| Point3::new(coords[3 * k], coords[3 * k + 1], coords[3 * k + 2]));
        prop_assume!(tet_signed_volume(t).abs() > 1e-2);
        let s = Point3::from_array(shift);
        let moved = t.map(|p| p * scale + s);
        let (q, r) = (tet_quality(t).unwrap(), tet_quality(moved).unwrap());
        prop_assert!((q.aspect_ratio - r.aspect_ratio).abs() <= 1e-8 * q.aspect_ratio);
        prop_assert!((r.circumradius - scale * q.circumradius).abs() <= 1e-8 * r.circumradius);
        // Euler's inequality for tetrahedra.
        prop_assert!(3.0 * q.inradius <= q.circumradius * (1.0 + 1e-9));
    }
}

#[test]
fn near_collinear_triple_is_decided_exactly() {
    let a = Point2::new(0.5, 0.5);
    let b = Point2::new(12.0, 12.0);
    let c = Point2::new(24.0, 24.0);
    assert_eq!(orient2d(a, b, c), Orientation::Collinear);
    // One ulp to the right of the line y = x.
    let nudged = Point2::new(0.5 + f64::EPSILON, 0.5);
    assert_eq!(orient2d(nudged, b, c), Orientation::Clockwise);
}

#[test]
fn cocircular_point_is_on_the_circle() {
    let (a, b, c) = (Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), Point2::new(-1.0, 0.0));
    assert_eq!(incircle(a, b, c, Point2::new(0.0, -1.0)), Ordering::Equal);
    assert_eq!(incircle(a, b, c, Point2::new(0.0, 0.0)), Ordering::Greater);
    assert_eq!(incircle(a, b, c, Point2::new(2.0, 2.0)), Ordering::Less);
}

#[test]
fn polygon_measures() {
    let l = common::polygon(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]);
    assert_relative_eq!(l.area(), 3.0);
    assert_relative_eq!(l.diameter(), 8f64.sqrt());
    assert!(!l.is_convex());
    assert!(l.contains(Point2::new(0.5, 1.5)));
    assert!(!l.contains(Point2::new(1.5, 1.5)));
    assert!(l.on_boundary(Point2::new(1.0, 1.5)));
    // Clockwise input is reoriented.
    let cw = common::polygon(&[(0., 0.), (0., 1.), (1., 1.), (1., 0.)]);
    assert!(cw.signed_area() > 0.0);
}

#[test]
fn self_intersecting_polygon_is_rejected() {
    let bowtie = vec![Point2::new(0., 0.), Point2::new(1., 1.), Point2::new(1., 0.), Point2::new(0., 1.)];
    assert!(Polygon::new_any_orientation(bowtie).is_err());
}

#[test]
fn inscribed_circle_of_convex_polygons() {
    let square = common::polygon(&[(0., 0.), (2., 0.), (2., 2.), (0., 2.)]);
    let (c, r) = inradius_convex_polygon(&square).unwrap();
    assert_relative_eq!(r, 1.0, epsilon = 1e-10);
    assert_relative_eq!(c.x, 1.0, epsilon = 1e-10);
    let tri = common::polygon(&[(0., 0.), (1., 0.), (0.5, 0.75f64.sqrt())]);
    let (_, r) = inradius_convex_polygon(&tri).unwrap();
    assert_relative_eq!(r, 1.0 / (2.0 * 3f64.sqrt()), epsilon = 1e-10);
    let l = common::polygon(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]);
    assert!(inradius_convex_polygon(&l).is_err());
}

#[test]
fn inscribed_sphere_of_convex_polyhedra() {
    let (_, r) = inradius_convex_polyhedron(&regular_octahedron(1.0)).unwrap();
    assert_relative_eq!(r, 1.0 / 3f64.sqrt(), epsilon = 1e-10);
    let (c, r) = inradius_convex_polyhedron(&box_polyhedron(1.0, 2.0, 3.0)).unwrap();
    assert_relative_eq!(r, 0.5, epsilon = 1e-10);
    assert_relative_eq!(c.x, 0.5, epsilon = 1e-10);
    // Regular tetrahedron with unit edge: inradius 1/sqrt(24).
    let (_, r) = inradius_convex_polyhedron(&regular_tetrahedron()).unwrap();
    assert_relative_eq!(r, 1.0 / 24f64.sqrt(), epsilon = 1e-10);
}

#[test]
fn polyhedron_measures() {
    let b = box_polyhedron(1.0, 2.0, 3.0);
    assert_relative_eq!(b.volume(), 6.0, epsilon = 1e-12);
    assert_relative_eq!(b.surface_area(), 22.0, epsilon = 1e-12);
    assert_relative_eq!(b.diameter(), 14f64.sqrt(), epsilon = 1e-12);
    assert!(b.is_convex() && b.is_triangulated());
    let o = regular_octahedron(1.0);
    assert_relative_eq!(o.volume(), 4.0 / 3.0, epsilon = 1e-12);
    assert_eq!(o.edge_count(), 12);
    let t = regular_tetrahedron();
    assert_relative_eq!(t.volume(), 1.0 / (6.0 * 2f64.sqrt()), epsilon = 1e-12);
}

#[test]
fn regular_tetrahedron_quality() {
    let t = regular_tetrahedron();
    let v = t.vertices();
    let q = tet_quality([v[0], v[1], v[2], v[3]]).unwrap();
    assert_relative_eq!(q.circumradius, (3.0f64 / 8.0).sqrt(), epsilon = 1e-12);
    assert_relative_eq!(q.aspect_ratio, 24f64.sqrt(), epsilon = 1e-10);
}
