//! Circumradius audits and structural checks on triangulations.

use std::cmp::Ordering;

use serde::Serialize;

use super::TriMesh;
use crate::geometry::{circumcircle, incircle, is_obtuse, Polygon};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QualityReport {
    pub max_circumradius: f64,
    pub argmax_triangle: usize,
    pub longest_edge_on_boundary: bool,
    pub diameter: f64,
    /// `max_circumradius / diameter`.
    pub ratio: f64,
}

const ARGMAX_RTOL: f64 = 1e-12;

pub fn circumradii(m: &TriMesh) -> Vec<f64> {
    (0..m.triangles().len())
        .map(|t| {
            let [a, b, c] = m.triangle_points(t);
            circumcircle(a, b, c).map(|(_, r)| r).unwrap_or(f64::INFINITY)
        })
        .collect()
}

/// Local indices of every edge of `t` within relative tolerance of the
/// longest.
fn longest_edges(m: &TriMesh, t: usize) -> Vec<usize> {
    let p = m.triangle_points(t);
    let len: [f64; 3] = std::array::from_fn(|k| p[k].dist(p[(k + 1) % 3]));
    let max = len.iter().copied().fold(0.0, f64::max);
    (0..3).filter(|&k| len[k] >= max * (1.0 - ARGMAX_RTOL)).collect()
}

fn longest_edge_on_boundary(m: &TriMesh, t: usize) -> bool {
    longest_edges(m, t).into_iter().any(|k| m.is_boundary_edge(t, k))
}

pub fn quality_report(m: &TriMesh, p: &Polygon) -> QualityReport {
    let radii = circumradii(m);
    let mut argmax = 0;
    for (t, &r) in radii.iter().enumerate() {
        if r > radii[argmax] {
            argmax = t;
        }
    }
    let max_circumradius = radii.get(argmax).copied().unwrap_or(0.0);
    let diameter = p.diameter();
    QualityReport {
        max_circumradius,
        argmax_triangle: argmax,
        longest_edge_on_boundary: !radii.is_empty() && longest_edge_on_boundary(m, argmax),
        diameter,
        ratio: max_circumradius / diameter,
    }
}

/// True when the largest circumradius is at most the diameter, or some
/// triangle attaining it has its longest edge on the boundary.
pub fn verify_walk_lemma(m: &TriMesh, p: &Polygon) -> bool {
    let radii = circumradii(m);
    let r_max = radii.iter().copied().fold(0.0, f64::max);
    if r_max <= p.diameter() {
        return true;
    }
    radii
        .iter()
        .enumerate()
        .filter(|&(_, &r)| r >= r_max * (1.0 - ARGMAX_RTOL))
        .any(|(t, _)| longest_edge_on_boundary(m, t))
}

/// First obtuse triangle whose unconstrained interior longest edge borders
/// a triangle of no larger circumradius, with that neighbour.
///
/// Exactly cocircular pairs share one circumcircle and are not reported.
pub fn adjacent_circumradius_violation(m: &TriMesh) -> Option<(usize, usize)> {
    let radii = circumradii(m);
    for t in 0..m.triangles().len() {
        let [a, b, c] = m.triangle_points(t);
        if !is_obtuse(a, b, c) {
            continue;
        }
        let tri = m.triangles()[t];
        for k in longest_edges(m, t) {
            let Some(s) = m.neighbor(t, k) else { continue };
            if m.is_constrained(tri[k], tri[(k + 1) % 3]) {
                continue;
            }
            if radii[s] > radii[t] {
                continue;
            }
            let d = m.triangles()[s]
                .iter()
                .map(|&v| m.vertices()[v])
                .find(|&q| q != m.vertices()[tri[k]] && q != m.vertices()[tri[(k + 1) % 3]])
                .expect("neighbour has a third vertex");
            if incircle(a, b, c, d) == Ordering::Equal {
                continue;
            }
            return Some((t, s));
        }
    }
    None
}

pub fn verify_adjacent_circumradius(m: &TriMesh) -> bool {
    adjacent_circumradius_violation(m).is_none()
}

/// Number of unconstrained interior edges that fail the local
/// empty-circumcircle test.
pub fn local_delaunay_violations(m: &TriMesh) -> usize {
    let mut count = 0;
    for (t, tri) in m.triangles().iter().enumerate() {
        for k in 0..3 {
            let Some(s) = m.neighbor(t, k) else { continue };
            if s < t || m.is_constrained(tri[k], tri[(k + 1) % 3]) {
                continue;
            }
            let [a, b, c] = m.triangle_points(t);
            let d = m.triangles()[s]
                .iter()
                .copied()
                .find(|&v| v != tri[k] && v != tri[(k + 1) % 3])
                .expect("neighbour has a third vertex");
            if incircle(a, b, c, m.vertices()[d]) == Ordering::Greater {
                count += 1;
            }
        }
    }
    count
}
