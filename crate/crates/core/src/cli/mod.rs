//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! property check fails, 2 on bad input.

mod mesh;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use mesh::{faces, to_off};
use report::{digest_file, scalar, vector, vectors, Report};
pub use suites::{asymcont_bodies, ratio_check, run_suite, SuiteOutcome, SUITES};

use crate::constructions::{generate, perfect_probe_with, GeneratorKind, PerfectStatus, GENERATOR_VERSION};
use crate::kernel::{parse_scalar, Scalar};
use crate::polytope::io::{body_to_json, read_body};
use crate::polytope::Body;
use crate::predicates::{is_complete, is_constant_width, is_pseudo_complete};
use crate::radii::{asymmetry, diameter_by_segments, radii};
use crate::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "gaugebody",
    version,
    about = "Exact radii, completeness and constant width of polytopes under polytopal gauges"
)]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radii, asymmetry and structural flags of a body with respect to a gauge.
    Analyze {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
    },
    /// Run a verification suite on seeded random instances.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
    },
    /// Search for a complete body of non-constant width.
    ProbePerfect {
        #[arg(long)]
        gauge: PathBuf,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        /// Directory receiving Y.json, Ystar.json and witness.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write bodies as one OFF mesh.
    ExportMesh {
        #[arg(long)]
        body: Vec<PathBuf>,
        /// Export the containment chain of this body instead.
        #[arg(long)]
        asymcont: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// Write a named or seeded random body file.
    Generate {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex count (random_polytope) or pair count (random_symmetric).
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let command: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    match execute(&cli.command, command) {
        Ok(mut report) => {
            report.wall_time_ms = start.elapsed().as_millis();
            let _ = out.write_all(report.render(matches!(cli.format, Format::Text)).as_bytes());
            if report.passes {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::NotConverged { .. } | Error::ConstructionFailed(_) => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

fn report(command: Vec<String>, inputs: Vec<Value>, results: Value, passes: bool) -> Report {
    Report { command, inputs, results, passes, wall_time_ms: 0 }
}

fn digests(paths: &[&Path]) -> Result<Vec<Value>, Error> {
    paths.iter().map(|p| digest_file(p).map_err(Error::from)).collect()
}

fn execute(cmd: &Command, command: Vec<String>) -> Result<Report, Error> {
    match cmd {
        Command::Analyze { body, gauge } => {
            let k = read_body(body)?;
            let c = read_body(gauge)?;
            let results = analyze(&k, &c)?;
            let passes = results["checks_pass"].as_bool().unwrap_or(false);
            Ok(report(command, digests(&[body, gauge])?, results, passes))
        }
        Command::Verify { suite, seed, count } => {
            let outcome = run_suite(suite, *seed, *count)?;
            let mut results = outcome.to_json();
            results["generator_version"] = json!(GENERATOR_VERSION);
            Ok(report(command, vec![], results, outcome.passes()))
        }
        Command::ProbePerfect { gauge, epsilon, out } => {
            let c = read_body(gauge)?;
            let eps = parse_scalar(epsilon)?;
            let (results, passes) = probe(&c, &eps, out.as_deref())?;
            Ok(report(command, digests(&[gauge])?, results, passes))
        }
        Command::ExportMesh { body, asymcont, out, precision } => {
            let mut inputs: Vec<&Path> = body.iter().map(PathBuf::as_path).collect();
            let mut bodies = inputs.iter().map(|p| read_body(p)).collect::<Result<Vec<_>, _>>()?;
            let mut results = json!({});
            let mut passes = true;
            if let Some(p) = asymcont {
                let (ok, chain, details) = asymcont_bodies(&read_body(p)?)?;
                bodies.extend(chain);
                results["asymcont"] = details;
                passes = ok;
                inputs.push(p);
            }
            if bodies.is_empty() {
                return Err(Error::EmptyInput);
            }
            let text = to_off(&bodies, *precision)?;
            std::fs::write(out, &text)?;
            results["out"] = json!(out.display().to_string());
            results["bodies"] =
                json!(bodies.iter().map(|b| b.name().unwrap_or("unnamed").to_string()).collect::<Vec<_>>());
            results["sha256"] = json!(report::sha256_hex(text.as_bytes()));
            Ok(report(command, digests(&inputs)?, results, passes))
        }
        Command::Generate { kind, dim, seed, count, out } => {
            let b = generate(&GeneratorKind::parse(kind, *count)?, *dim, *seed)?;
            let text = body_to_json(&b);
            if let Some(path) = out {
                std::fs::write(path, &text)?;
            }
            let results = json!({ "body": report::body(&b), "generator_version": GENERATOR_VERSION, "seed": seed });
            Ok(report(command, vec![], results, true))
        }
    }
}

/// All functionals of `K` relative to `C` with internal cross-checks.
pub fn analyze(k: &Body, c: &Body) -> Result<Value, Error> {
    let rad = radii(k, c)?;
    let asym = asymmetry(k)?;
    let cw = is_constant_width(k, c)?;
    let complete = is_complete(k, c)?;
    let pseudo = is_pseudo_complete(k, c)?;
    let segments = diameter_by_segments(k, c)?;
    let ratio =
        if rad.diameter == Scalar::from_integer(0.into()) { None } else { Some(&rad.circumradius / &rad.diameter) };
    let checks_pass = k.check_representations() && c.check_representations() && segments == rad.diameter;
    Ok(json!({
        "dim": k.dim(),
        "R": scalar(&rad.circumradius),
        "r": scalar(&rad.inradius),
        "D": scalar(&rad.diameter),
        "w": scalar(&rad.width),
        "R/D": ratio.as_ref().map(scalar),
        "s": scalar(&asym.s),
        "circumcenter": vector(&rad.circumcenter),
        "incenter": vector(&rad.incenter),
        "minkowski_center": vector(&asym.minkowski_center),
        "diameter_pair": vectors([&rad.diameter_pair.0, &rad.diameter_pair.1]),
        "width_direction": vector(&rad.width_direction),
        "constant_width": cw.is_cw,
        "complete": complete.is_complete,
        "completeness_witness": complete.witness.as_ref().map(vector),
        "pseudo_complete": pseudo.is_pseudo_complete,
        "checks_pass": checks_pass,
    }))
}

/// Runs the perfectness probe. `passes` is false only when a produced
/// witness fails re-verification.
pub fn probe(c: &Body, epsilon: &Scalar, out: Option<&Path>) -> Result<(Value, bool), Error> {
    let verdict = perfect_probe_with(c, epsilon)?;
    let mut results = json!({ "notes": verdict.notes });
    let mut passes = true;
    match &verdict.status {
        PerfectStatus::Perfect2D => results["status"] = json!("Perfect2D"),
        PerfectStatus::UndecidedNecessaryPassed => results["status"] = json!("UndecidedNecessaryPassed"),
        PerfectStatus::NotPerfect(w) => {
            passes = w.verify()?;
            let ystar_complete = is_complete(&w.ystar, &w.gauge)?.is_complete;
            let witness = json!({
                "vertex": vector(&w.vertex),
                "facets": [w.facets.0, w.facets.1],
                "normals": vectors([&w.normals.0, &w.normals.1]),
                "direction": vector(&w.direction),
                "epsilon": scalar(&w.epsilon),
                "x1": vector(&w.x1),
                "x2": vector(&w.x2),
                "X": report::body(&w.slice),
                "Y": report::body(&w.y),
                "Ystar": report::body(&w.ystar),
                "Ystar_complete": ystar_complete,
                "Ystar_constant_width": w.cw_failure.is_cw,
                "cw_failing_direction": w.cw_failure.failing_direction.as_ref().map(vector),
                "completion_steps": w.completion_iterations,
                "verified": passes,
            });
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("Y.json"), body_to_json(&w.y))?;
                std::fs::write(dir.join("Ystar.json"), body_to_json(&w.ystar))?;
                std::fs::write(dir.join("witness.json"), serde_json::to_string_pretty(&witness).expect("serializes"))?;
            }
            results["status"] = json!("NotPerfect");
            results["witness"] = witness;
        }
    }
    Ok((results, passes))
}
