use std::collections::HashMap;

use serde::Serialize;

use super::{max_pairwise, GeometryError, Point3};

/// A closed polyhedral surface with outward-oriented faces.
///
/// Faces are vertex-index loops. Triangles are the norm; planar faces with
/// more vertices are accepted so that the square-based example family can be
/// described without triangulating its base.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polyhedron {
    vertices: Vec<Point3>,
    faces: Vec<Vec<usize>>,
}

/// Supporting plane of a face: `normal . x = offset`, unit outward normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plane {
    pub normal: Point3,
    pub offset: f64,
}

impl Plane {
    pub fn signed_distance(&self, p: Point3) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

const PLANARITY_TOL: f64 = 1e-9;

impl Polyhedron {
    pub fn new(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        if vertices.len() < 4 {
            return Err(GeometryError::TooFewVertices { needed: 4, got: vertices.len() });
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite { index: i });
        }
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(GeometryError::BadFace { face: fi, reason: "fewer than 3 vertices".into() });
            }
            for (k, &v) in face.iter().enumerate() {
                if v >= vertices.len() {
                    return Err(GeometryError::BadFace { face: fi, reason: format!("vertex index {v} out of range") });
                }
                if face[k + 1..].contains(&v) {
                    return Err(GeometryError::BadFace { face: fi, reason: format!("vertex {v} repeated") });
                }
                let w = face[(k + 1) % face.len()];
                if directed.insert((v, w), fi).is_some() {
                    return Err(GeometryError::NonManifold { detail: format!("directed edge ({v}, {w}) used twice") });
                }
            }
        }
        for &(v, w) in directed.keys() {
            if !directed.contains_key(&(w, v)) {
                return Err(GeometryError::NonManifold { detail: format!("edge ({v}, {w}) is open or inconsistently oriented") });
            }
        }
        let n_edges = directed.len() / 2;
        let mut used = vec![false; vertices.len()];
        faces.iter().flatten().for_each(|&v| used[v] = true);
        let n_vertices = used.iter().filter(|&&u| u).count();
        let euler = n_vertices as i64 - n_edges as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(GeometryError::NonManifold { detail: format!("Euler characteristic {euler}, expected 2") });
        }
        let poly = Self { vertices, faces };
        for fi in 0..poly.faces.len() {
            poly.check_planar(fi)?;
        }
        if poly.signed_volume() <= 0.0 {
            return Err(GeometryError::NotOutward);
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_points(&self, face: usize) -> Vec<Point3> {
        self.faces[face].iter().map(|&v| self.vertices[v]).collect()
    }

    pub fn is_triangulated(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 3)
    }

    pub fn edge_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Fan triangles of every face, in face order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        self.faces
            .iter()
            .flat_map(|f| (1..f.len() - 1).map(move |k| [f[0], f[k], f[k + 1]]))
            .collect()
    }

    /// Newell normal scaled to twice the face area.
    fn face_area_vector(&self, face: usize) -> Point3 {
        let pts = self.face_points(face);
        let n = pts.len();
        let mut acc = Point3::default();
        for i in 0..n {
            acc = acc + pts[i].cross(pts[(i + 1) % n]);
        }
        acc
    }

    pub fn face_area(&self, face: usize) -> f64 {
        0.5 * self.face_area_vector(face).norm()
    }

    pub fn face_plane(&self, face: usize) -> Plane {
        let normal = {
            let a = self.face_area_vector(face);
            a * (1.0 / a.norm())
        };
        let pts = self.face_points(face);
        let offset = pts.iter().map(|&p| normal.dot(p)).sum::<f64>() / pts.len() as f64;
        Plane { normal, offset }
    }

    fn check_planar(&self, face: usize) -> Result<(), GeometryError> {
        if self.face_area(face) <= 0.0 {
            return Err(GeometryError::BadFace { face, reason: "zero area".into() });
        }
        let plane = self.face_plane(face);
        let scale = self.diameter().max(f64::MIN_POSITIVE);
        for p in self.face_points(face) {
            if plane.signed_distance(p).abs() > PLANARITY_TOL * scale {
                return Err(GeometryError::BadFace { face, reason: "not planar".into() });
            }
        }
        Ok(())
    }

    pub fn signed_volume(&self) -> f64 {
        self.triangles()
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| self.vertices[i]);
                a.dot(b.cross(c)) / 6.0
            })
            .sum()
    }

    pub fn volume(&self) -> f64 {
        self.signed_volume().abs()
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }

    pub fn diameter(&self) -> f64 {
        max_pairwise(&self.vertices, Point3::dist)
    }

    /// Convex when every vertex lies on the inner side of every face plane.
    pub fn is_convex(&self) -> bool {
        let tol = PLANARITY_TOL * self.diameter();
        (0..self.faces.len()).all(|f| {
            let plane = self.face_plane(f);
            self.vertices.iter().all(|&p| plane.signed_distance(p) <= tol)
        })
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&v| v * s).collect(),
            faces: self.faces.clone(),
        }
    }

    /// Distance from `p` to the boundary loop of a face (measured in space).
    pub fn face_boundary_distance(&self, face: usize, p: Point3) -> f64 {
        let pts = self.face_points(face);
        let n = pts.len();
        (0..n)
            .map(|i| point_segment_distance3(p, pts[i], pts[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn point_segment_distance3(p: Point3, a: Point3, b: Point3) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Regular octahedron with vertices at distance `r` from the origin.
pub fn regular_octahedron(r: f64) -> Polyhedron {
    let v = vec![
        Point3::new(r, 0., 0.),
        Point3::new(-r, 0., 0.),
        Point3::new(0., r, 0.),
        Point3::new(0., -r, 0.),
        Point3::new(0., 0., r),
        Point3::new(0., 0., -r),
    ];
    let f = vec![
        vec![0, 2, 4],
        vec![2, 1, 4],
        vec![1, 3, 4],
        vec![3, 0, 4],
        vec![2, 0, 5],
        vec![1, 2, 5],
        vec![3, 1, 5],
        vec![0, 3, 5],
    ];
    Polyhedron::new(v, f).expect("octahedron is valid")
}

/// Regular tetrahedron with unit edge length.
pub fn regular_tetrahedron() -> Polyhedron {
    let h = (2.0_f64 / 3.0).sqrt();
    let v = vec![
        Point3::new(0., 0., 0.),
        Point3::new(1., 0., 0.),
        Point3::new(0.5, 3f64.sqrt() / 2.0, 0.),
        Point3::new(0.5, 3f64.sqrt() / 6.0, h),
    ];
    let f = vec![vec![0, 2, 1], vec![0, 1, 3], vec![1, 2, 3], vec![2, 0, 3]];
    Polyhedron::new(v, f).expect("tetrahedron is valid")
}

/// Axis-aligned box `[0, a] x [0, b] x [0, c]` with triangulated faces.
pub fn box_polyhedron(a: f64, b: f64, c: f64) -> Polyhedron {
    let v = vec![
        Point3::new(0., 0., 0.),
        Point3::new(a, 0., 0.),
        Point3::new(a, b, 0.),
        Point3::new(0., b, 0.),
        Point3::new(0., 0., c),
        Point3::new(a, 0., c),
        Point3::new(a, b, c),
        Point3::new(0., b, c),
    ];
    let quads = [[0, 3, 2, 1], [4, 5, 6, 7], [0, 1, 5, 4], [1, 2, 6, 5], [2, 3, 7, 6], [3, 0, 4, 7]];
    let f = quads
        .iter()
        .flat_map(|q| [vec![q[0], q[1], q[2]], vec![q[0], q[2], q[3]]])
        .collect();
    Polyhedron::new(v, f).expect("box is valid")
}
