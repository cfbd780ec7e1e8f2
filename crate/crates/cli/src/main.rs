use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gbclab::fem::DEFAULT_TOL;

use gbclab_cli::commands::{self, emit, CoordsOptions};
use gbclab_cli::domain::Domain;
use gbclab_cli::error::CliError;
use gbclab_cli::verify::{self, Suite, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "gbclab", version, about = "Harmonic coordinates, CDT audits and interpolation-error experiments")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample harmonic coordinates on a grid and report the axiom checks as JSON.
    Coords {
        /// Polygon domain file.
        domain: PathBuf,
        /// Coordinate to sample; all of them when omitted.
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long, default_value_t = 4)]
        level: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Grid points per side of the bounding box.
        #[arg(long, default_value_t = 21)]
        grid: usize,
        /// Interior samples for the invariance check.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Pass threshold of the axiom report.
        #[arg(long, default_value_t = 1e-8)]
        axiom_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Circumradius audit of the constrained Delaunay triangulation as JSON.
    Audit {
        /// Polygon domain file.
        domain: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a degenerating family and write one CSV row per parameter.
    Family {
        /// convex2d, nonconvex2d, convex3d or nonconvex3d.
        #[arg(long)]
        family: String,
        /// Comma-separated, positive and strictly decreasing.
        #[arg(long)]
        params: String,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// CSV destination; standard output when omitted, with the summary
        /// moved to standard error.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a randomized verifier; exits 1 on any counterexample.
    Verify {
        /// walk, adjacent, tetquality, flattening, classP or all.
        #[arg(long)]
        suite: String,
        /// Number of cases, replacing the per-suite default.
        #[arg(long)]
        cases: Option<usize>,
        /// Class threshold for the classP suite.
        #[arg(long, default_value_t = 10.0)]
        gamma_star: f64,
        /// Sampler radius for the tetquality suite.
        #[arg(long, default_value_t = 0.2)]
        r_star: f64,
        /// Sampler height for the tetquality suite.
        #[arg(long, default_value_t = 0.2)]
        h_star: f64,
        /// Polyhedron file checked first by the classP suite.
        #[arg(long)]
        domain: Option<PathBuf>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("GBCLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::usage(format!("GBCLAB_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::usage(format!("cannot configure {n} threads: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Coords { domain, vertex, level, tol, grid, samples, axiom_tol, out } => {
            let opts = CoordsOptions { vertex, level, tol, grid, samples, axiom_tol, seed: cli.seed };
            let text = commands::coords(&domain, &opts)?;
            emit(out.as_deref(), &text)
        }
        Command::Audit { domain, out } => {
            let text = commands::audit(&domain)?;
            emit(out.as_deref(), &text)
        }
        Command::Family { family, params, level, tol, out } => {
            let result = commands::family(&family, &params, level, tol)?;
            emit(out.as_deref(), &result.csv)?;
            if out.is_some() {
                println!("{}", result.summary);
            } else {
                eprintln!("{}", result.summary);
            }
            if result.failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::Numerical(result.failures.join("; ")))
            }
        }
        Command::Verify { suite, cases, gamma_star, r_star, h_star, domain } => {
            let suite: Suite = suite.parse().map_err(CliError::usage)?;
            let polyhedron = domain.map(|p| Domain::load(&p)?.polyhedron(&p)).transpose()?;
            let opts = VerifyOptions { cases, seed: cli.seed, gamma_star, r_star, h_star, polyhedron };
            let log = verify::run(suite, &opts)?;
            let mut text = log.lines.join("\n");
            text.push_str(&format!(
                "\nsuite {suite}: {} cases, {} counterexamples\n",
                log.lines.len(),
                log.counterexamples.len()
            ));
            emit(None, &text)?;
            match log.counterexamples.first() {
                None => Ok(()),
                Some(first) => Err(CliError::Counterexample(format!(
                    "{} in suite {suite}, first: {first}",
                    log.counterexamples.len()
                ))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
