//! Randomized verifiers for the structural lemmas.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use gbclab::cdt::{constrained_delaunay, delaunay, verify_adjacent_circumradius, verify_walk_lemma};
use gbclab::experiments::{class_p_check, flattening_check, random_bipyramid, tet_quality_sample};
use gbclab::geometry::{regular_octahedron, Point2, Polygon, Polyhedron};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::DomainFile;
use crate::error::CliError;

/// Bound on the slopes of the flattening profile.
const FLATTENING_BOUND: f64 = 5.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Walk,
    Adjacent,
    TetQuality,
    Flattening,
    ClassP,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Walk, Suite::Adjacent, Suite::TetQuality, Suite::Flattening, Suite::ClassP];

    pub fn name(self) -> &'static str {
        match self {
            Self::Walk => "walk",
            Self::Adjacent => "adjacent",
            Self::TetQuality => "tetquality",
            Self::Flattening => "flattening",
            Self::ClassP => "classP",
            Self::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Self::Walk, Self::Adjacent, Self::TetQuality, Self::Flattening, Self::ClassP, Self::All]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}` (expected walk, adjacent, tetquality, flattening, classP or all)"))
    }
}

pub struct VerifyOptions {
    /// Overrides the default number of cases of each suite.
    pub cases: Option<usize>,
    pub seed: u64,
    pub gamma_star: f64,
    pub r_star: f64,
    pub h_star: f64,
    /// Polyhedron checked first by the class suite instead of the octahedron.
    pub polyhedron: Option<Polyhedron>,
}

/// Log lines and counterexamples of one suite run.
#[derive(Default)]
pub struct SuiteLog {
    pub lines: Vec<String>,
    pub counterexamples: Vec<String>,
}

impl SuiteLog {
    fn case(&mut self, ok: bool, line: String) {
        self.lines.push(format!("{line}: {}", if ok { "ok" } else { "COUNTEREXAMPLE" }));
        if !ok {
            self.counterexamples.push(line);
        }
    }
}

/// Star-shaped polygon with `n` vertices; simple by construction.
pub fn random_star_polygon(n: usize, rng: &mut impl Rng) -> Polygon {
    let step = TAU / n as f64;
    let pts = (0..n)
        .map(|k| {
            let a = step * (k as f64 + rng.random_range(-0.35..0.35));
            let r = rng.random_range(0.3..1.0);
            Point2::new(r * a.cos(), r * a.sin())
        })
        .collect();
    Polygon::new(pts).expect("star polygons with separated angles are simple")
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<SuiteLog, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut log = SuiteLog::default();
    match suite {
        Suite::Walk => walk(opts.cases.unwrap_or(500), &mut rng, &mut log)?,
        Suite::Adjacent => adjacent(opts.cases.unwrap_or(1000), &mut rng, &mut log)?,
        Suite::TetQuality => tet_quality(opts, &mut log)?,
        Suite::Flattening => flattening(opts.cases.unwrap_or(100), &mut log)?,
        Suite::ClassP => class_p(opts, &mut rng, &mut log)?,
        Suite::All => {
            for s in Suite::EACH {
                let sub = run(s, opts)?;
                log.lines.extend(sub.lines);
                log.counterexamples.extend(sub.counterexamples);
            }
        }
    }
    Ok(log)
}

fn walk(cases: usize, rng: &mut impl Rng, log: &mut SuiteLog) -> Result<(), CliError> {
    for case in 0..cases {
        let p = random_star_polygon(rng.random_range(3..=20), rng);
        let m = constrained_delaunay(&p).map_err(CliError::numerical)?;
        let ok = verify_walk_lemma(&m, &p);
        let mut line = format!("walk case {case}: {} vertices", p.len());
        if !ok {
            line.push_str(&format!(" {}", serde_json::to_string(&DomainFile::from_polygon(&p)).expect("serializes")));
        }
        log.case(ok, line);
    }
    Ok(())
}

fn adjacent(cases: usize, rng: &mut impl Rng, log: &mut SuiteLog) -> Result<(), CliError> {
    for case in 0..cases {
        let n = rng.random_range(4..=60);
        let pts: Vec<Point2> = (0..n).map(|_| Point2::new(rng.random(), rng.random())).collect();
        let m = delaunay(&pts).map_err(CliError::numerical)?;
        let ok = verify_adjacent_circumradius(&m);
        let mut line = format!("adjacent case {case}: {n} points");
        if !ok {
            let coords: Vec<[f64; 2]> = pts.iter().map(|p| [p.x, p.y]).collect();
            line.push_str(&format!(" {}", serde_json::to_string(&coords).expect("serializes")));
        }
        log.case(ok, line);
    }
    // The check must also reject a mesh that is not Delaunay: flipping the
    // diagonal of this kite leaves an obtuse triangle whose neighbour across
    // its longest edge has the smaller circumcircle.
    let kite = [Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 0.2), Point2::new(0.0, -2.0)];
    let mut m = delaunay(&kite).map_err(CliError::numerical)?;
    let (t, k) = (0..m.triangles().len())
        .flat_map(|t| (0..3).map(move |k| (t, k)))
        .find(|&(t, k)| m.neighbor(t, k).is_some())
        .ok_or_else(|| CliError::numerical("kite triangulation has no interior edge"))?;
    m.flip_edge(t, k).map_err(CliError::numerical)?;
    log.case(!verify_adjacent_circumradius(&m), "adjacent flipped kite rejected".to_string());
    Ok(())
}

fn tet_quality(opts: &VerifyOptions, log: &mut SuiteLog) -> Result<(), CliError> {
    let n = opts.cases.unwrap_or(10_000);
    let a = tet_quality_sample(opts.r_star, opts.h_star, n, opts.seed).map_err(CliError::numerical)?;
    let b = tet_quality_sample(opts.r_star, opts.h_star, n, opts.seed).map_err(CliError::numerical)?;
    log.case(
        a.max_aspect_ratio.is_finite(),
        format!(
            "tetquality r*={} h*={} n={n}: ceiling {:.6}, mean {:.6}",
            opts.r_star, opts.h_star, a.max_aspect_ratio, a.mean_aspect_ratio
        ),
    );
    log.case(a == b, format!("tetquality seed {} reproducible", opts.seed));
    Ok(())
}

fn flattening(cases: usize, log: &mut SuiteLog) -> Result<(), CliError> {
    for k in 1..=cases {
        let eps = 0.25 * k as f64 / (cases + 1) as f64;
        let r = flattening_check(eps, 1000).map_err(CliError::numerical)?;
        let worst = r.sup.max(r.sampled_lipschitz);
        log.case(worst < FLATTENING_BOUND, format!("flattening eps={eps:.6}: sup |b'| {worst:.6}"));
    }
    Ok(())
}

fn class_p(opts: &VerifyOptions, rng: &mut impl Rng, log: &mut SuiteLog) -> Result<(), CliError> {
    let mut polys = vec![opts.polyhedron.clone().unwrap_or_else(|| regular_octahedron(1.0))];
    for _ in 0..opts.cases.unwrap_or(200) {
        polys.push(random_bipyramid(rng.random_range(3..=12), rng).map_err(CliError::numerical)?);
    }
    let n_star = PI * opts.gamma_star * opts.gamma_star;
    for (case, p) in polys.iter().enumerate() {
        let r = class_p_check(p, opts.gamma_star).map_err(CliError::numerical)?;
        let name = if case == 0 { "fixture".to_string() } else { format!("bipyramid {case}") };
        if !r.member {
            log.lines.push(format!("classP {name}: gamma {:.4}, not a member at gamma* {}", r.gamma, opts.gamma_star));
            continue;
        }
        let ok = (r.n_faces as f64) < n_star && (r.n_vertices as f64) < n_star && r.euler_holds;
        log.case(
            ok,
            format!("classP {name}: member, gamma {:.4}, {} faces, {} vertices, bound {n_star:.2}", r.gamma, r.n_faces, r.n_vertices),
        );
    }
    Ok(())
}
