//! Robust planar predicates.
//!
//! `orient2d` and `incircle` use adaptive-precision floating point expansions
//! and return exact signs for all representable inputs. The angle test falls
//! back to rational arithmetic when the floating point dot product is too
//! close to zero to trust.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Point2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    /// `+1`, `-1` or `0`.
    pub fn sign(self) -> i8 {
        match self {
            Orientation::CounterClockwise => 1,
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
        }
    }
}

fn coord(p: Point2) -> robust::Coord<f64> {
    robust::Coord { x: p.x, y: p.y }
}

/// Orientation of the triple `(a, b, c)`.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> Orientation {
    let det = robust::orient2d(coord(a), coord(b), coord(c));
    if det > 0.0 {
        Orientation::CounterClockwise
    } else if det < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Position of `d` relative to the circumcircle of the counter-clockwise
/// triangle `(a, b, c)`: `Greater` inside, `Equal` on, `Less` outside.
pub fn incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> Ordering {
    let det = robust::incircle(coord(a), coord(b), coord(c), coord(d));
    det.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
}

fn rational(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()))
}

/// Sign of `(a - c) . (b - c)`, i.e. whether the angle at `c` of triangle
/// `(a, b, c)` is acute (`Greater`), right (`Equal`) or obtuse (`Less`).
pub fn angle_sign(a: Point2, b: Point2, c: Point2) -> Ordering {
    let u = a - c;
    let v = b - c;
    let dot = u.dot(v);
    let scale = u.norm() * v.norm();
    if dot.abs() > 1e-12 * scale {
        return dot.partial_cmp(&0.0).unwrap_or(Ordering::Equal);
    }
    let (ax, ay) = (rational(a.x), rational(a.y));
    let (bx, by) = (rational(b.x), rational(b.y));
    let (cx, cy) = (rational(c.x), rational(c.y));
    let exact = (&ax - &cx) * (&bx - &cx) + (&ay - &cy) * (&by - &cy);
    if exact.is_zero() {
        Ordering::Equal
    } else if exact.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// True when the closed segments `[a, b]` and `[c, d]` cross at a single
/// point interior to both.
pub fn segments_cross_properly(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o1 = orient2d(a, b, c).sign();
    let o2 = orient2d(a, b, d).sign();
    let o3 = orient2d(c, d, a).sign();
    let o4 = orient2d(c, d, b).sign();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// True when `p` lies on the closed segment `[a, b]`.
pub fn on_segment(p: Point2, a: Point2, b: Point2) -> bool {
    orient2d(a, b, p) == Orientation::Collinear
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// True when the closed segments `[a, b]` and `[c, d]` share any point.
pub fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    segments_cross_properly(a, b, c, d)
        || on_segment(c, a, b)
        || on_segment(d, a, b)
        || on_segment(a, c, d)
        || on_segment(b, c, d)
}
