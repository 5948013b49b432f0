//! The `affine-atlas` command line.
//!
//! [`run`] takes the argument list and the three standard streams so the
//! whole program can be driven from tests.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use affine_atlas::dev_chart::{develop_with, loop_holonomy};
use affine_atlas::fixtures::{build_example, ExampleId};
use affine_atlas::flows::{
    forward_absorbing, line_avoidance_check, radial_saturation_contains, transverse_action,
    AvoidanceConfig, PuncturedCylinderSampler,
};
use affine_atlas::line_groups::{
    block_decompose, classify_cyclic_with, radiant_conjugator, shear_normal_form, OrbitHorizon,
};
use affine_atlas::orbit::{iterate, max_circular_gap, planar_angles};
use affine_atlas::tiling::{render_tiling, TilingJob, Viewport};
use affine_atlas::{fixed_points, tol, AffineMap, Vector};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

pub mod input;

use input::Document;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: exit status 1.
    #[error("{0}")]
    Invalid(String),
    /// A bug or an environment failure: exit status 2.
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn json(source: &str, e: &serde_json::Error) -> Self {
        CliError::Invalid(format!("{source}: invalid JSON: {e}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Invalid(e.to_string())
            }
        }
    )*};
}

invalid_from!(
    affine_atlas::AffineError,
    affine_atlas::line_groups::LineGroupError,
    affine_atlas::flows::FlowError,
    affine_atlas::DevError,
    affine_atlas::fixtures::FixtureError
);

impl From<affine_atlas::tiling::TilingError> for CliError {
    fn from(e: affine_atlas::tiling::TilingError) -> Self {
        match e {
            affine_atlas::tiling::TilingError::Io { .. } => CliError::Internal(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "affine-atlas",
    version,
    about = "Affine holonomy groups, developing maps and planar tilings",
    long_about = "Affine holonomy groups, developing maps and planar tilings.\n\n\
        Every subcommand reads one JSON document from INPUT (default: standard input) \
        and writes JSON to standard output, except `tile`, which writes SVG."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seam tolerance for develop/holonomy; orbit target distance for classify.
    #[arg(long, global = true, value_name = "TOL")]
    tolerance: Option<f64>,

    /// Seed for every randomized harness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Iteration cap: orbit witness length for classify, default step count for orbit.
    #[arg(long, global = true, value_name = "N")]
    max_iter: Option<usize>,

    /// Write the result to this file instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InputArg {
    /// JSON input file; `-` or absent reads standard input.
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a line-preserving map (or each generator of a group) as a cyclic holonomy.
    Classify(InputArg),
    /// Split a line-preserving map into its (r, w, A, d) blocks.
    Block(InputArg),
    /// Conjugate a line-translating map by a shear to clear its shear row.
    NormalForm(InputArg),
    /// Fixed points of a map, or a common fixed point of a group.
    FixedPoint(InputArg),
    /// Iterate a map on a point.
    Orbit {
        #[command(flatten)]
        input: InputArg,
        /// Starting point, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        point: Vec<f64>,
        /// Number of iterations (default: --max-iter, else 10).
        #[arg(long)]
        steps: Option<usize>,
        /// Generator to iterate when the input is a group (default: the first).
        #[arg(long)]
        generator: Option<String>,
        /// Iterate the induced action y -> Ay + v on the transverse factor.
        #[arg(long)]
        transverse: bool,
    },
    /// Develop a path through a chart complex.
    Develop(InputArg),
    /// Holonomy of a loop in a chart complex.
    Holonomy(InputArg),
    /// Check that a group acting by translations on the line never carries points onto it.
    AvoidLine {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_word_length: usize,
    },
    /// Decide whether radial orbits of query points meet a ball.
    Saturate(InputArg),
    /// Render group copies of a planar fundamental polygon as SVG.
    Tile {
        #[command(flatten)]
        input: InputArg,
        /// Longest reduced word to enumerate (default: the job's value, else 4).
        #[arg(long)]
        max_word_length: Option<usize>,
        /// Visible region as xmin,ymin,xmax,ymax.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 4)]
        viewport: Option<Vec<f64>>,
    },
    /// Emit one of the built-in example groups as JSON.
    Example {
        /// One of TranslationTorus, HopfCylinder, SimilarityTorus, InvariantLine3Torus,
        /// IrrationalScrew, HopfManifold.
        name: String,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
    },
}

/// Runs the program and returns its exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(&cli, stdin)));
    let result = match outcome {
        Ok(r) => r,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            Err(CliError::Internal(msg))
        }
    };
    match result.and_then(|out| emit(&cli, &out, stdout)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, out: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, out)
            .map_err(|e| CliError::Internal(format!("failed to write {}: {e}", path.display()))),
        None => stdout
            .write_all(out.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::Internal(format!("failed to write output: {e}"))),
    }
}

fn read_input(arg: &InputArg, stdin: &mut dyn Read) -> Result<Document, CliError> {
    let (text, source) = match &arg.input {
        Some(path) if path != Path::new("-") => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
            (text, path.display().to_string())
        }
        _ => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| CliError::Invalid(format!("cannot read standard input: {e}")))?;
            (text, "<stdin>".to_string())
        }
    };
    input::parse(&text, &source)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn unexpected(command: &str, doc: &Document, wanted: &str) -> CliError {
    CliError::Invalid(format!("{command} expects {wanted}, got {}", doc.kind()))
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<String, CliError> {
    match &cli.command {
        Command::Classify(arg) => classify(cli, read_input(arg, stdin)?),
        Command::Block(arg) => match read_input(arg, stdin)? {
            Document::Map(f) => to_json(&block_decompose(&f)?),
            doc => Err(unexpected("block", &doc, "an affine map")),
        },
        Command::NormalForm(arg) => {
            let block = match read_input(arg, stdin)? {
                Document::Map(f) => block_decompose(&f)?,
                Document::Block(b) => b,
                doc => {
                    return Err(unexpected(
                        "normal-form",
                        &doc,
                        "an affine map or block form",
                    ))
                }
            };
            to_json(&shear_normal_form(&block)?)
        }
        Command::FixedPoint(arg) => match read_input(arg, stdin)? {
            Document::Map(f) => to_json(&fixed_points(&f)),
            doc => match doc.group() {
                Some(group) => match radiant_conjugator(group) {
                    Some(rc) => to_json(&json!({ "radiant": true, "conjugation": rc })),
                    None => to_json(&json!({ "radiant": false })),
                },
                None => Err(unexpected("fixed-point", &doc, "an affine map or group")),
            },
        },
        Command::Orbit {
            input,
            point,
            steps,
            generator,
            transverse,
        } => {
            let doc = read_input(input, stdin)?;
            let mut map = pick_map(&doc, generator.as_deref(), "orbit")?;
            if *transverse {
                map = transverse_action(&map)?;
            }
            let steps = steps.or(cli.max_iter).unwrap_or(10);
            let start = Vector::from_column_slice(point);
            let points = iterate(&map, &start, steps)?;
            let rows: Vec<Vec<f64>> = points.iter().map(|p| p.iter().copied().collect()).collect();
            let mut out = json!({ "map": map, "points": rows });
            if map.dim() == 2 {
                out["max_circular_gap"] = json!(max_circular_gap(&planar_angles(&points)));
            }
            to_json(&out)
        }
        Command::Develop(arg) => match read_input(arg, stdin)? {
            Document::Dev(job) => {
                let tolerance = cli.tolerance.unwrap_or(tol::SEAM);
                to_json(&develop_with(&job.complex, &job.path, tolerance)?)
            }
            doc => Err(unexpected(
                "develop",
                &doc,
                "a {\"complex\", \"path\"} document",
            )),
        },
        Command::Holonomy(arg) => match read_input(arg, stdin)? {
            Document::Dev(job) => {
                let tolerance = cli.tolerance.unwrap_or(tol::SEAM);
                // Develop first so seam errors honour --tolerance.
                develop_with(&job.complex, &job.path, tolerance)?;
                to_json(&json!({ "holonomy": loop_holonomy(&job.complex, &job.path)? }))
            }
            doc => Err(unexpected(
                "holonomy",
                &doc,
                "a {\"complex\", \"path\"} document",
            )),
        },
        Command::AvoidLine {
            input,
            samples,
            max_word_length,
        } => {
            let doc = read_input(input, stdin)?;
            let group = doc
                .group()
                .ok_or_else(|| unexpected("avoid-line", &doc, "a group"))?;
            let mut sampler = PuncturedCylinderSampler::new(group.dimension());
            let config = AvoidanceConfig {
                samples: *samples,
                max_word_length: *max_word_length,
                seed: cli.seed,
            };
            let report = line_avoidance_check(group, &mut sampler, config)?;
            let rendered = report.worst_word.render(group);
            let mut value =
                serde_json::to_value(&report).map_err(|e| CliError::Internal(e.to_string()))?;
            value["worst_word_rendered"] = json!(rendered);
            value["avoids_line"] = json!(report.line_hits == 0);
            to_json(&value)
        }
        Command::Saturate(arg) => match read_input(arg, stdin)? {
            Document::Saturate(job) => {
                let results = job
                    .points
                    .iter()
                    .map(|q| radial_saturation_contains(&job.ball, &Vector::from_column_slice(q)))
                    .collect::<Result<Vec<bool>, _>>()?;
                to_json(&json!({
                    "forward_absorbing": forward_absorbing(&job.ball),
                    "results": results,
                }))
            }
            doc => Err(unexpected(
                "saturate",
                &doc,
                "a {\"ball\", \"points\"} document",
            )),
        },
        Command::Tile {
            input,
            max_word_length,
            viewport,
        } => {
            let doc = read_input(input, stdin)?;
            let mut job = tiling_job(doc)?;
            if let Some(l) = max_word_length {
                job.max_word_length = *l;
            }
            if let Some(v) = viewport {
                job.viewport = Viewport {
                    min: [v[0], v[1]],
                    max: [v[2], v[3]],
                };
            }
            Ok(render_tiling(&job)?)
        }
        Command::Example {
            name,
            lambda,
            theta,
            n,
        } => {
            let id = ExampleId::with_params(name, *lambda, *theta, *n)?;
            to_json(&build_example(id)?)
        }
    }
}

fn classify(cli: &Cli, doc: Document) -> Result<String, CliError> {
    let mut horizon = OrbitHorizon::default();
    if let Some(n) = cli.max_iter {
        horizon.max_iter = n;
    }
    if let Some(t) = cli.tolerance {
        horizon.target = t;
    }
    if let Document::Map(f) = &doc {
        return to_json(&classify_cyclic_with(f, horizon)?);
    }
    let group = doc
        .group()
        .ok_or_else(|| unexpected("classify", &doc, "an affine map or group"))?;
    let mut verdicts = Vec::new();
    for g in group.generators() {
        let verdict = classify_cyclic_with(&g.map, horizon)
            .map_err(|e| CliError::Invalid(format!("generator {:?}: {e}", g.name)))?;
        verdicts.push(json!({ "generator": g.name, "verdict": verdict }));
    }
    to_json(&json!({ "verdicts": verdicts }))
}

fn pick_map(doc: &Document, generator: Option<&str>, command: &str) -> Result<AffineMap, CliError> {
    if let Document::Map(f) = doc {
        return Ok(f.clone());
    }
    let group = doc
        .group()
        .ok_or_else(|| unexpected(command, doc, "an affine map or group"))?;
    let index = match generator {
        Some(name) => group
            .index_of(name)
            .ok_or_else(|| CliError::Invalid(format!("no generator named {name:?}")))?,
        None if group.is_empty() => {
            return Err(CliError::Invalid("group has no generators".into()))
        }
        None => 0,
    };
    Ok(group.generators()[index].map.clone())
}

const DEFAULT_TILE_WORD_LENGTH: usize = 4;

fn tiling_job(doc: Document) -> Result<TilingJob, CliError> {
    match doc {
        Document::Tiling(job) => Ok(job),
        Document::Example(ex) => {
            let polygon = ex.metadata.fundamental_domain.as_ref().ok_or_else(|| {
                CliError::Invalid(format!(
                    "example {} has no planar fundamental domain to tile",
                    ex.id
                ))
            })?;
            let polygon = polygon
                .iter()
                .map(|p| match p.as_slice() {
                    [x, y] => Ok([*x, *y]),
                    _ => Err(CliError::Invalid(
                        "fundamental domain vertices must be planar".into(),
                    )),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TilingJob {
                polygon,
                group: ex.presentation,
                max_word_length: DEFAULT_TILE_WORD_LENGTH,
                viewport: Viewport::default(),
            })
        }
        doc => Err(unexpected("tile", &doc, "an example or tiling job")),
    }
}
