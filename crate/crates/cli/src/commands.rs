//! The coordinate, audit and family commands.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use gbclab::cdt::{constrained_delaunay, quality_report, verify_walk_lemma};
use gbclab::experiments::{
    fit_loglog_slope, linear_fit, run_family, ExperimentRow, FamilyKind, FamilySpec, RowField,
};
use gbclab::gbc::{axiom_check, harmonic_coordinates, interior_samples, AxiomReport, GbcError, Similarity};
use gbclab::geometry::Point2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::domain::Domain;
use crate::error::CliError;

pub const CSV_HEADER: &str = "family,param,dist,h1_error,h2_seminorm,ratio,paper_bound,max_circumradius";

/// Writes `text` to `out`, or to standard output when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::usage(format!("cannot write to standard output: {e}")))
        }
    }
}

fn gbc_error(e: GbcError) -> CliError {
    match e {
        GbcError::VertexIndex { .. } => CliError::usage(e),
        other => CliError::numerical(other),
    }
}

pub struct CoordsOptions {
    pub vertex: Option<usize>,
    pub level: usize,
    pub tol: f64,
    pub grid: usize,
    pub samples: usize,
    pub axiom_tol: f64,
    pub seed: u64,
}

#[derive(Serialize)]
struct GridSample {
    point: [f64; 2],
    lambda: Vec<f64>,
}

#[derive(Serialize)]
struct CoordsOutput {
    level: usize,
    tolerance: f64,
    grid: usize,
    coordinates: Vec<usize>,
    samples: Vec<GridSample>,
    axioms: AxiomReport,
    passed: [bool; 6],
}

/// Samples the harmonic coordinates on a regular grid over the bounding box,
/// keeping points inside the polygon, and checks the coordinate axioms.
pub fn coords(path: &Path, opts: &CoordsOptions) -> Result<String, CliError> {
    let p = Domain::load(path)?.polygon(path)?;
    if opts.grid < 2 {
        return Err(CliError::usage("--grid must be at least 2"));
    }
    let selected: Vec<usize> = match opts.vertex {
        Some(i) if i >= p.len() => {
            return Err(CliError::usage(format!("vertex {i} out of range for {} polygon vertices", p.len())))
        }
        Some(i) => vec![i],
        None => (0..p.len()).collect(),
    };
    let c = harmonic_coordinates(&p, opts.level, opts.tol).map_err(gbc_error)?;
    let locator = c.locator();
    let (lo, hi) = p.bounding_box();
    let steps = (opts.grid - 1) as f64;
    let mut samples = Vec::new();
    for j in 0..opts.grid {
        for i in 0..opts.grid {
            let q = Point2::new(
                lo.x + (hi.x - lo.x) * i as f64 / steps,
                lo.y + (hi.y - lo.y) * j as f64 / steps,
            );
            if !(p.contains(q) || p.on_boundary(q)) {
                continue;
            }
            if let Some(all) = c.evaluate(&locator, q) {
                samples.push(GridSample { point: [q.x, q.y], lambda: selected.iter().map(|&k| all[k]).collect() });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let inside = interior_samples(&p, opts.samples, &mut rng);
    let axioms = axiom_check(&c, &inside, Similarity::random(&mut rng), opts.axiom_tol).map_err(gbc_error)?;
    let out = CoordsOutput {
        level: opts.level,
        tolerance: opts.tol,
        grid: opts.grid,
        coordinates: selected,
        samples,
        passed: axioms.passed(),
        axioms,
    };
    Ok(serde_json::to_string_pretty(&out).expect("coordinate output serializes") + "\n")
}

#[derive(Serialize)]
struct AuditOutput {
    diameter: f64,
    max_circumradius: f64,
    ratio: f64,
    argmax_triangle: usize,
    longest_edge_on_boundary: bool,
    walk_lemma_ok: bool,
}

/// Circumradius audit of the constrained Delaunay triangulation.
pub fn audit(path: &Path) -> Result<String, CliError> {
    let p = Domain::load(path)?.polygon(path)?;
    let m = constrained_delaunay(&p).map_err(CliError::numerical)?;
    let q = quality_report(&m, &p);
    let out = AuditOutput {
        diameter: q.diameter,
        max_circumradius: q.max_circumradius,
        ratio: q.ratio,
        argmax_triangle: q.argmax_triangle,
        longest_edge_on_boundary: q.longest_edge_on_boundary,
        walk_lemma_ok: verify_walk_lemma(&m, &p),
    };
    Ok(serde_json::to_string_pretty(&out).expect("audit output serializes") + "\n")
}

pub fn parse_params(s: &str) -> Result<Vec<f64>, CliError> {
    let params: Vec<f64> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| CliError::usage(format!("parameter `{t}` is not a number"))))
        .collect::<Result<_, _>>()?;
    if params.is_empty() {
        return Err(CliError::usage("--params needs at least one value"));
    }
    Ok(params)
}

fn csv_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv(rows: &[ExperimentRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let opt = |v: Option<f64>| v.map(csv_float).unwrap_or_default();
        writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.family,
            csv_float(r.param),
            csv_float(r.dist),
            csv_float(r.h1_error),
            csv_float(r.h2_seminorm),
            csv_float(r.ratio),
            opt(r.paper_bound),
            opt(r.max_circumradius)
        )
        .expect("writing to a string cannot fail");
    }
    s
}

/// One-line summary: log-log slope of the error against the distance and
/// the spread of the ratio over the last three rows.
pub fn summary(kind: FamilyKind, rows: &[ExperimentRow]) -> String {
    let mut s = format!("{kind}: {} rows", rows.len());
    match fit_loglog_slope(rows, RowField::Dist, RowField::H1Error) {
        Ok(slope) => write!(s, ", slope {slope:.4} (log h1_error vs log dist)"),
        Err(e) => write!(s, ", slope unavailable ({e})"),
    }
    .expect("writing to a string cannot fail");
    let tail = &rows[rows.len().saturating_sub(3)..];
    let ratios: Vec<f64> = tail.iter().map(|r| r.ratio).collect();
    if ratios.len() >= 2 && ratios.iter().all(|r| r.is_finite() && *r > 0.0) {
        let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        write!(s, ", ratio spread {:.4} over the last {} rows", max / min, ratios.len()).expect("string write");
    }
    if kind == FamilyKind::Nonconvex2d {
        let xs: Vec<f64> = rows.iter().map(|r| (1.0 / r.param).ln()).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.error_squared()).collect();
        if let Ok(fit) = linear_fit(&xs, &ys) {
            write!(s, ", error^2 vs ln(1/eps) R^2 {:.4}", fit.r_squared).expect("string write");
        }
    }
    s
}

pub struct FamilyOutcome {
    pub csv: String,
    pub summary: String,
    pub failures: Vec<String>,
}

pub fn family(name: &str, params: &str, level: usize, tol: f64) -> Result<FamilyOutcome, CliError> {
    let kind: FamilyKind = name.parse().map_err(CliError::usage)?;
    let spec = FamilySpec::new(kind, parse_params(params)?).map_err(CliError::usage)?;
    let rows = run_family(&spec, level, tol).map_err(CliError::usage)?;
    let failures = rows
        .iter()
        .filter_map(|r| r.error.as_ref().map(|e| format!("{kind} param {}: {e}", r.param)))
        .collect();
    Ok(FamilyOutcome { csv: csv(&rows), summary: summary(kind, &rows), failures })
}
