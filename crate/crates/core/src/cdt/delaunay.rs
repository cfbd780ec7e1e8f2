//! Delaunay triangulation by lexicographic sweep insertion and Lawson flips.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use super::trimesh::{edge_key, TriMesh};
use super::CdtError;
use crate::geometry::{incircle, orient2d, Orientation, Point2};

/// Mutable triangulation keyed by directed edges.
pub(super) struct Builder<'a> {
    pub pts: &'a [Point2],
    pub tris: Vec<[usize; 3]>,
    /// Directed edge `(u, v)` to the triangle holding it counter-clockwise.
    pub edges: HashMap<(usize, usize), usize>,
    pub constrained: HashSet<(usize, usize)>,
}

impl<'a> Builder<'a> {
    pub fn new(pts: &'a [Point2]) -> Self {
        Self { pts, tris: Vec::new(), edges: HashMap::new(), constrained: HashSet::new() }
    }

    pub fn add(&mut self, t: [usize; 3]) -> usize {
        let idx = self.tris.len();
        self.tris.push(t);
        for k in 0..3 {
            self.edges.insert((t[k], t[(k + 1) % 3]), idx);
        }
        idx
    }

    fn replace(&mut self, idx: usize, t: [usize; 3]) {
        let old = self.tris[idx];
        for k in 0..3 {
            let e = (old[k], old[(k + 1) % 3]);
            if self.edges.get(&e) == Some(&idx) {
                self.edges.remove(&e);
            }
        }
        self.tris[idx] = t;
        for k in 0..3 {
            self.edges.insert((t[k], t[(k + 1) % 3]), idx);
        }
    }

    /// Vertex opposite the directed edge `(a, b)` in the triangle holding it.
    pub fn apex(&self, a: usize, b: usize) -> Option<usize> {
        let t = self.tris[*self.edges.get(&(a, b))?];
        t.iter().copied().find(|&v| v != a && v != b)
    }

    /// Flips the edge shared by `(a, b, p)` and `(b, a, d)`, producing
    /// `(a, d, p)` and `(d, b, p)`.
    pub fn flip(&mut self, a: usize, b: usize) -> (usize, usize) {
        let t1 = self.edges[&(a, b)];
        let t2 = self.edges[&(b, a)];
        let p = self.apex(a, b).expect("edge has a left triangle");
        let d = self.apex(b, a).expect("edge has a right triangle");
        self.replace(t1, [a, d, p]);
        self.replace(t2, [d, b, p]);
        (p, d)
    }

    /// Whether edge `(a, b)` with apexes `p` (left) and `d` (right) should
    /// be replaced by `(p, d)`. Cocircular ties prefer the diagonal touching
    /// the lowest vertex index.
    pub fn should_flip(&self, a: usize, b: usize, p: usize, d: usize) -> bool {
        let pts = self.pts;
        match incircle(pts[a], pts[b], pts[p], pts[d]) {
            Ordering::Greater => true,
            Ordering::Equal => p.min(d) < a.min(b),
            Ordering::Less => false,
        }
    }

    /// Restores the local Delaunay property starting from the given edges.
    pub fn legalize(&mut self, mut stack: Vec<(usize, usize)>) {
        while let Some((a, b)) = stack.pop() {
            if self.constrained.contains(&edge_key(a, b)) {
                continue;
            }
            let (Some(p), Some(d)) = (self.apex(a, b), self.apex(b, a)) else {
                continue;
            };
            if self.should_flip(a, b, p, d) {
                self.flip(a, b);
                stack.extend([(a, d), (d, b), (b, p), (p, a)]);
            }
        }
    }

    /// Every interior edge, once per undirected pair.
    pub fn interior_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .edges
            .keys()
            .filter(|&&(a, b)| a < b && self.edges.contains_key(&(b, a)))
            .copied()
            .collect();
        out.sort_unstable();
        out
    }

    pub fn into_mesh(self, constrained: Vec<(usize, usize)>) -> Result<TriMesh, CdtError> {
        TriMesh::new(self.pts.to_vec(), self.tris, constrained)
    }
}

/// Triangulates `points` sweep-wise: points are inserted in lexicographic
/// order, each connected to the hull edges it sees, then legalized.
pub(super) fn build(pts: &[Point2]) -> Result<Builder<'_>, CdtError> {
    let n = pts.len();
    if n < 3 {
        return Err(CdtError::TooFewPoints(n));
    }
    if let Some(i) = pts.iter().position(|p| !p.is_finite()) {
        return Err(CdtError::NonFinite(i));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        (pts[i].x, pts[i].y)
            .partial_cmp(&(pts[j].x, pts[j].y))
            .expect("finite coordinates")
    });
    for w in order.windows(2) {
        if pts[w[0]] == pts[w[1]] {
            return Err(CdtError::DuplicatePoint(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    let (s0, s1) = (order[0], order[1]);
    let Some(k) = (2..n).find(|&k| orient2d(pts[s0], pts[s1], pts[order[k]]) != Orientation::Collinear) else {
        return Err(CdtError::Collinear);
    };

    let mut b = Builder::new(pts);
    let mut next = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    let apex = order[k];
    let ccw = orient2d(pts[s0], pts[s1], pts[apex]) == Orientation::CounterClockwise;
    // Fan from `apex` over the leading collinear chain.
    for i in 0..k - 1 {
        let (u, v) = (order[i], order[i + 1]);
        if ccw {
            b.add([u, v, apex]);
            next[u] = v;
            prev[v] = u;
        } else {
            b.add([v, u, apex]);
            next[v] = u;
            prev[u] = v;
        }
    }
    let (first, last) = (order[0], order[k - 1]);
    if ccw {
        next[last] = apex;
        prev[apex] = last;
        next[apex] = first;
        prev[first] = apex;
    } else {
        next[first] = apex;
        prev[apex] = first;
        next[apex] = last;
        prev[last] = apex;
    }

    let mut recent = apex;
    for &p in &order[k + 1..] {
        let visible = |u: usize, v: usize| orient2d(pts[u], pts[v], pts[p]) == Orientation::Clockwise;
        let mut lo = recent;
        while visible(prev[lo], lo) {
            lo = prev[lo];
        }
        let mut hi = recent;
        while visible(hi, next[hi]) {
            hi = next[hi];
        }
        let mut stack = Vec::new();
        let mut v = lo;
        while v != hi {
            let w = next[v];
            b.add([w, v, p]);
            stack.push((w, v));
            v = w;
        }
        debug_assert!(!stack.is_empty(), "newly swept point sees no hull edge");
        next[lo] = p;
        prev[p] = lo;
        next[p] = hi;
        prev[hi] = p;
        b.legalize(stack);
        recent = p;
    }
    Ok(b)
}

/// Delaunay triangulation of a point set. No edges are constrained.
pub fn delaunay(points: &[Point2]) -> Result<TriMesh, CdtError> {
    build(points)?.into_mesh(Vec::new())
}
