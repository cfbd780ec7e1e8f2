//! Uniform refinement by edge midpoints.
//!
//! Triangles split into four. Tetrahedra split into eight with the inner
//! octahedron cut along the diagonal between the midpoints of edges 02 and
//! 13; vertex order is carried through levels so the children stay within a
//! bounded number of shapes.

use std::collections::HashMap;

use super::{FemError, TetMesh};
use crate::cdt::{edge_key, TriMesh};
use crate::geometry::{tet_signed_volume, Point2, Point3};

/// Parents of the vertices added by one refinement level; vertex
/// `n_old + k` is the midpoint of `parents[k]`.
#[derive(Clone, Debug, Default)]
pub struct Refinement {
    pub n_old: usize,
    pub parents: Vec<(usize, usize)>,
}

impl Refinement {
    /// Extends a piecewise-linear nodal field from the coarse mesh.
    pub fn prolong(&self, coarse: &[f64]) -> Vec<f64> {
        let mut out = coarse.to_vec();
        out.extend(self.parents.iter().map(|&(a, b)| 0.5 * (coarse[a] + coarse[b])));
        out
    }
}

/// Applies a sequence of refinements to a coarse nodal field.
pub fn prolong_all(levels: &[Refinement], coarse: &[f64]) -> Vec<f64> {
    levels.iter().fold(coarse.to_vec(), |v, r| r.prolong(&v))
}

struct Midpoints {
    map: HashMap<(usize, usize), usize>,
    refinement: Refinement,
}

impl Midpoints {
    fn new(n_old: usize) -> Self {
        Self { map: HashMap::new(), refinement: Refinement { n_old, parents: Vec::new() } }
    }

    fn get(&mut self, a: usize, b: usize) -> usize {
        let key = edge_key(a, b);
        let next = self.refinement.n_old + self.refinement.parents.len();
        *self.map.entry(key).or_insert_with(|| {
            self.refinement.parents.push(key);
            next
        })
    }
}

/// One level of 4-way triangle refinement; constrained edges are split
/// and both halves stay constrained.
pub fn refine_tri_once(m: &TriMesh) -> (TriMesh, Refinement) {
    let n = m.vertices().len();
    let mut mids = Midpoints::new(n);
    let mut tris = Vec::with_capacity(4 * m.triangles().len());
    for &[a, b, c] in m.triangles() {
        let (ab, bc, ca) = (mids.get(a, b), mids.get(b, c), mids.get(c, a));
        tris.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
    }
    let mut constrained = Vec::with_capacity(2 * m.constrained_edges().len());
    for &(a, b) in m.constrained_edges() {
        let mid = mids.get(a, b);
        constrained.extend([(a, mid), (mid, b)]);
    }
    let old = m.vertices();
    let mut vertices: Vec<Point2> = old.to_vec();
    vertices.extend(mids.refinement.parents.iter().map(|&(a, b)| old[a].midpoint(old[b])));
    let mesh = TriMesh::new(vertices, tris, constrained).expect("refinement preserves validity");
    (mesh, mids.refinement)
}

/// Refines `levels` times.
pub fn refine_tri(m: &TriMesh, levels: usize) -> (TriMesh, Vec<Refinement>) {
    let mut mesh = m.clone();
    let mut history = Vec::with_capacity(levels);
    for _ in 0..levels {
        let (next, r) = refine_tri_once(&mesh);
        mesh = next;
        history.push(r);
    }
    (mesh, history)
}

fn red_split(tets: &[[usize; 4]], mids: &mut Midpoints) -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(8 * tets.len());
    for &[x0, x1, x2, x3] in tets {
        let x01 = mids.get(x0, x1);
        let x02 = mids.get(x0, x2);
        let x03 = mids.get(x0, x3);
        let x12 = mids.get(x1, x2);
        let x13 = mids.get(x1, x3);
        let x23 = mids.get(x2, x3);
        out.extend([
            [x0, x01, x02, x03],
            [x01, x1, x12, x13],
            [x02, x12, x2, x23],
            [x03, x13, x23, x3],
            [x01, x02, x03, x13],
            [x01, x02, x12, x13],
            [x02, x03, x13, x23],
            [x02, x12, x13, x23],
        ]);
    }
    out
}

/// Refines a tetrahedral mesh `levels` times, keeping the vertex order used
/// by the splitting rule and fixing orientations at the end.
pub fn refine_tet(m: &TetMesh, levels: usize) -> Result<(TetMesh, Vec<Refinement>), FemError> {
    let mut vertices: Vec<Point3> = m.vertices().to_vec();
    let mut tets = m.tets().to_vec();
    let mut history = Vec::with_capacity(levels);
    for _ in 0..levels {
        let mut mids = Midpoints::new(vertices.len());
        tets = red_split(&tets, &mut mids);
        let new_pts: Vec<_> = mids.refinement.parents.iter().map(|&(a, b)| vertices[a].midpoint(vertices[b])).collect();
        vertices.extend(new_pts);
        history.push(mids.refinement);
    }
    for t in &mut tets {
        if tet_signed_volume(t.map(|v| vertices[v])) < 0.0 {
            t.swap(2, 3);
        }
    }
    Ok((TetMesh::new(vertices, tets)?, history))
}
