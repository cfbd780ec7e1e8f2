//! Bounded-aspect-ratio polyhedra: class membership, the incenter star
//! tetrahedralization and a sampler for tetrahedra over good triangles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ExperimentError;
use crate::fem::TetMesh;
use crate::geometry::{inradius_convex_polyhedron, tet_quality, Point3, Polyhedron};

/// Membership of a polyhedron in the class with aspect-ratio bound `gamma_star`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassPReport {
    pub gamma_star: f64,
    pub member: bool,
    pub convex: bool,
    pub triangulated: bool,
    /// `diam / inradius`, infinite when the inradius is not computed.
    pub gamma: f64,
    pub min_face_inradius: f64,
    pub n_faces: usize,
    pub n_vertices: usize,
    /// `pi * gamma_star^2`.
    pub n_star: f64,
    /// Members only: both counts below `n_star`.
    pub counts_below_n_star: bool,
    /// `n_v = n_t / 2 + 2`.
    pub euler_holds: bool,
}

fn face_inradius(a: Point3, b: Point3, c: Point3) -> f64 {
    let area = 0.5 * (b - a).cross(c - a).norm();
    2.0 * area / (a.dist(b) + b.dist(c) + c.dist(a))
}

pub fn class_p_check(p: &Polyhedron, gamma_star: f64) -> Result<ClassPReport, ExperimentError> {
    if !(gamma_star > 0.0 && gamma_star.is_finite()) {
        return Err(ExperimentError::OutOfRange { name: "gamma_star", value: gamma_star, range: "(0, inf)" });
    }
    let convex = p.is_convex();
    let triangulated = p.is_triangulated();
    let diam = p.diameter();
    let gamma = if convex { diam / inradius_convex_polyhedron(p)?.1 } else { f64::INFINITY };
    let min_face_inradius = if triangulated {
        p.faces()
            .iter()
            .map(|f| {
                let v = p.vertices();
                face_inradius(v[f[0]], v[f[1]], v[f[2]])
            })
            .fold(f64::INFINITY, f64::min)
    } else {
        0.0
    };
    let member = convex && triangulated && gamma < gamma_star && min_face_inradius > diam / gamma_star;
    let n_star = std::f64::consts::PI * gamma_star * gamma_star;
    let (n_faces, n_vertices) = (p.faces().len(), p.vertices().len());
    Ok(ClassPReport {
        gamma_star,
        member,
        convex,
        triangulated,
        gamma,
        min_face_inradius,
        n_faces,
        n_vertices,
        n_star,
        counts_below_n_star: !member || ((n_faces as f64) < n_star && (n_vertices as f64) < n_star),
        euler_holds: !triangulated || 2 * n_vertices == n_faces + 4,
    })
}

/// One tetrahedron per face, joined to the Chebyshev center.
#[derive(Clone, Debug, Serialize)]
pub struct StarMesh {
    pub mesh: TetMesh,
    pub center: Point3,
    pub inradius: f64,
    pub aspect_ratios: Vec<f64>,
    /// Distance from the center to each face plane.
    pub heights: Vec<f64>,
    pub face_inradii: Vec<f64>,
}

pub fn incenter_star_mesh(p: &Polyhedron, gamma_star: f64) -> Result<StarMesh, ExperimentError> {
    let report = class_p_check(p, gamma_star)?;
    if !report.member {
        return Err(ExperimentError::NotMember(format!(
            "convex {}, triangulated {}, gamma {}, min face inradius {}",
            report.convex, report.triangulated, report.gamma, report.min_face_inradius
        )));
    }
    let (center, inradius) = inradius_convex_polyhedron(p)?;
    let mut vertices = p.vertices().to_vec();
    vertices.push(center);
    let c = vertices.len() - 1;
    let tets: Vec<[usize; 4]> = p.faces().iter().map(|f| [f[0], f[1], f[2], c]).collect();
    let mesh = TetMesh::new_reoriented(vertices, tets)?;
    let mut aspect_ratios = Vec::with_capacity(p.faces().len());
    for t in 0..mesh.tets().len() {
        aspect_ratios.push(tet_quality(mesh.tet_points(t))?.aspect_ratio);
    }
    let heights = (0..p.faces().len()).map(|f| -p.face_plane(f).signed_distance(center)).collect();
    let v = p.vertices();
    let face_inradii = p.faces().iter().map(|f| face_inradius(v[f[0]], v[f[1]], v[f[2]])).collect();
    Ok(StarMesh { mesh, center, inradius, aspect_ratios, heights, face_inradii })
}

/// Bipyramid over an `n`-gon with random angular jitter and apex heights;
/// convex with triangular faces.
pub fn random_bipyramid(n: usize, rng: &mut impl Rng) -> Result<Polyhedron, ExperimentError> {
    if n < 3 {
        return Err(ExperimentError::BadData("bipyramid needs at least three ring vertices"));
    }
    let step = std::f64::consts::TAU / n as f64;
    let mut vertices: Vec<Point3> = (0..n)
        .map(|k| {
            let a = step * (k as f64 + rng.random_range(-0.3..0.3));
            Point3::new(a.cos(), a.sin(), 0.0)
        })
        .collect();
    vertices.push(Point3::new(0.0, 0.0, rng.random_range(0.3..1.5)));
    vertices.push(Point3::new(0.0, 0.0, -rng.random_range(0.3..1.5)));
    let (top, bottom) = (n, n + 1);
    let mut faces = Vec::with_capacity(2 * n);
    for k in 0..n {
        let next = (k + 1) % n;
        faces.push(vec![k, next, top]);
        faces.push(vec![next, k, bottom]);
    }
    Ok(Polyhedron::new(vertices, faces)?)
}

/// Largest and mean aspect ratio over sampled tetrahedra.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TetQualitySample {
    pub r_star: f64,
    pub h_star: f64,
    pub n: usize,
    pub seed: u64,
    pub max_aspect_ratio: f64,
    pub mean_aspect_ratio: f64,
    pub attempts: usize,
}

fn disk_point(rng: &mut impl Rng) -> (f64, f64) {
    loop {
        let (x, y) = (rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        if x * x + y * y <= 1.0 {
            return (x, y);
        }
    }
}

/// Samples `n` tetrahedra whose base is a triangle in the unit disk of the
/// `xy`-plane with inradius at least `r_star` and diameter at most 1, and
/// whose apex lies in the cylinder `x^2 + y^2 <= 1, h_star <= z <= 1`.
pub fn tet_quality_sample(r_star: f64, h_star: f64, n: usize, seed: u64) -> Result<TetQualitySample, ExperimentError> {
    let max_r = 1.0 / (2.0 * 3f64.sqrt());
    if !(r_star > 0.0 && r_star < max_r) {
        return Err(ExperimentError::OutOfRange { name: "r_star", value: r_star, range: "(0, 1/(2 sqrt 3))" });
    }
    if !(h_star > 0.0 && h_star <= 1.0) {
        return Err(ExperimentError::OutOfRange { name: "h_star", value: h_star, range: "(0, 1]" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 100_000usize.max(n.saturating_mul(20_000));
    let (mut attempts, mut max_ar, mut sum) = (0usize, 0.0_f64, 0.0);
    for _ in 0..n {
        let base = loop {
            attempts += 1;
            if attempts > budget {
                return Err(ExperimentError::SamplerExhausted(attempts));
            }
            // Centre in the disk, then two more vertices within unit reach.
            let (x0, y0) = disk_point(&mut rng);
            let mut pts = [Point3::new(x0, y0, 0.0); 3];
            let mut inside = true;
            for q in pts.iter_mut().skip(1) {
                let (dx, dy) = disk_point(&mut rng);
                *q = Point3::new(x0 + dx, y0 + dy, 0.0);
                inside &= q.x * q.x + q.y * q.y <= 1.0;
            }
            let [a, b, c] = pts;
            let diam = a.dist(b).max(b.dist(c)).max(c.dist(a));
            if inside && diam <= 1.0 && face_inradius(a, b, c) >= r_star {
                break pts;
            }
        };
        let (x, y) = disk_point(&mut rng);
        let apex = Point3::new(x, y, rng.random_range(h_star..=1.0));
        let ar = tet_quality([base[0], base[1], base[2], apex])?.aspect_ratio;
        max_ar = max_ar.max(ar);
        sum += ar;
    }
    Ok(TetQualitySample {
        r_star,
        h_star,
        n,
        seed,
        max_aspect_ratio: max_ar,
        mean_aspect_ratio: if n == 0 { 0.0 } else { sum / n as f64 },
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_octahedron;

    #[test]
    fn octahedron_is_member() {
        let r = class_p_check(&regular_octahedron(1.0), 10.0).unwrap();
        assert!(r.member && r.euler_holds && r.counts_below_n_star);
        let star = incenter_star_mesh(&regular_octahedron(1.0), 10.0).unwrap();
        assert_eq!(star.mesh.tets().len(), 8);
    }

    #[test]
    fn sampler_is_reproducible() {
        let a = tet_quality_sample(0.2, 0.2, 200, 7).unwrap();
        let b = tet_quality_sample(0.2, 0.2, 200, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.max_aspect_ratio.is_finite());
    }
}
