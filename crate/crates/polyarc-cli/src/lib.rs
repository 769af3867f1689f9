//! Command-line surface for polyarc.
//!
//! Exit codes: 0 success, 2 malformed or unreadable input, 3 invalid
//! parameters, 1 internal failure.

pub mod document;
pub mod polyline_file;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyarc::annulus_solver::{min_width_annulus, AnnulusError};
use polyarc::arc_fit::Orientation;
use polyarc::delaunay::{build_closest_with, build_convex_ordered, build_farthest, BuildOptions, ClipConfig, MeshKind};
use polyarc::dp_compress::{compress_with, CompressionMode, CompressionParams, DpError, PrimitiveShape, Pruning};
use polyarc::geometry_core::{int_rational, rational_to_f64, IntPoint, Rational};
use polyarc::random_hull::{finalize_hull, grid_scale_for, uniform_grid_points, HullError, HullGenerator};
use thiserror::Error;

use document::ResultDocument;
use polyline_file::{default_scale, extent_scale, PolylineFile};

pub const FORMAT: &str = "polyarc-result/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Params(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Params(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "polyarc", version, about = "Optimal polyline compression into segments and circular arcs")]
pub struct Cli {
    /// Worker threads; falls back to ARC_THREADS, then to all cores.
    #[arg(long, global = true, env = "ARC_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a polyline into segments and arcs.
    Compress(CompressArgs),
    /// Minimum-width annulus of a point set.
    Annulus(AnnulusArgs),
    /// Time Delaunay builders on generated inputs.
    Bench(BenchArgs),
    /// Write a random convex hull as a polyline file.
    GenHull(GenHullArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Vertices,
    Segments,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct CompressArgs {
    pub input: PathBuf,
    /// Largest allowed deviation, in input units.
    #[arg(long)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value = "vertices")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 2)]
    pub penalty_segment: u64,
    #[arg(long, default_value_t = 3)]
    pub penalty_arc: u64,
    #[arg(long, default_value_t = 4)]
    pub min_arc_points: usize,
    /// 0 removes the cap.
    #[arg(long, default_value_t = 512)]
    pub max_arc_points: usize,
    /// Smallest arc sweep considered, degrees.
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Write the document here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add wall time to the document (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct AnnulusArgs {
    pub input: PathBuf,
    /// Smallest arc sweep whose center must be found, degrees.
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    /// Report whether an arc fits within this deviation.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchAlgo {
    Closest,
    Farthest,
    ConvexOrdered,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "closest")]
    pub algo: BenchAlgo,
    #[arg(long = "gen", default_value = "uniform")]
    pub generator: HullGenerator,
    /// Input sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "100000,200000")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenHullArgs {
    #[arg(long, default_value = "directions")]
    pub algo: HullGenerator,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Largest coordinate is placed near 2^bits grid units.
    #[arg(long, default_value_t = 40)]
    pub bits: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read_input(path: &Path) -> Result<PolylineFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    PolylineFile::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::Params(format!("--{name} must be a positive number")))
    }
}

fn clip_for(alpha_deg: f64) -> Result<ClipConfig, CliError> {
    if alpha_deg.is_finite() && alpha_deg > 0.0 && alpha_deg < 180.0 {
        Ok(ClipConfig::with_angle_degrees(alpha_deg))
    } else {
        Err(CliError::Params("--alpha must lie in (0, 180) degrees".into()))
    }
}

fn quantize(file: &PolylineFile, scale: i64) -> Result<Vec<IntPoint>, CliError> {
    file.quantize(scale).map_err(|e| CliError::Input(e.to_string()))
}

fn grid(v: i64, scale: i64) -> String {
    (v as f64 / scale as f64).to_string()
}

fn dp_error(e: DpError) -> CliError {
    match e {
        DpError::EmptyPolyline => CliError::Input(e.to_string()),
        DpError::InvalidTolerance | DpError::InvalidParams(_) => CliError::Params(e.to_string()),
        DpError::DanglingBackPointer => CliError::Internal(e.to_string()),
    }
}

pub fn cmd_compress(args: &CompressArgs) -> Result<String, CliError> {
    let tol = positive("tolerance", args.tolerance)?;
    let clip = clip_for(args.alpha)?;
    let file = read_input(&args.input)?;
    let scale = file.scale.unwrap_or_else(|| default_scale(tol));
    let points = quantize(&file, scale)?;
    let grid_tol = tol * scale as f64;
    let params = CompressionParams {
        tolerance: grid_tol,
        penalty_segment: args.penalty_segment,
        penalty_arc: args.penalty_arc,
        min_arc_points: args.min_arc_points,
        max_arc_points: args.max_arc_points,
        direction_slack: grid_tol,
        mode: match args.mode {
            ModeArg::Vertices => CompressionMode::Vertices,
            ModeArg::Segments => CompressionMode::Segments,
        },
        clip,
    };
    params.validate().map_err(dp_error)?;

    let started = Instant::now();
    let (result, stats) = compress_with(&points, &params, Pruning::FULL).map_err(dp_error)?;
    let elapsed = started.elapsed();

    let mut doc = ResultDocument::new();
    doc.field("format", FORMAT)
        .field("command", "compress")
        .field("input.path", args.input.display())
        .field("input.vertices", points.len())
        .field("input.scale", scale)
        .field("params.tolerance", tol)
        .field("params.mode", format!("{:?}", args.mode).to_lowercase())
        .field("params.penalty_segment", args.penalty_segment)
        .field("params.penalty_arc", args.penalty_arc)
        .field("params.min_arc_points", args.min_arc_points)
        .field("params.max_arc_points", args.max_arc_points)
        .field("params.alpha_deg", args.alpha)
        .field("result.vertices", result.vertices.len())
        .field("result.primitives", result.primitives.len())
        .field("result.arcs", result.arc_count())
        .field("result.segments", result.segment_count())
        .field("result.within_tolerance", result.within_tolerance(grid_tol));

    let s = scale as f64;
    let rows = result
        .primitives
        .iter()
        .map(|p| {
            let (a, b) = (result.vertices[p.start], result.vertices[p.end]);
            let mut row = vec![
                if p.is_arc() { "arc" } else { "segment" }.to_string(),
                p.start.to_string(),
                p.end.to_string(),
                grid(a.x, scale),
                grid(a.y, scale),
                grid(b.x, scale),
                grid(b.y, scale),
            ];
            match &p.shape {
                PrimitiveShape::Segment => row.extend(["-", "-", "-", "-"].map(String::from)),
                PrimitiveShape::Arc(arc) => row.extend([
                    (arc.center.0 / s).to_string(),
                    (arc.center.1 / s).to_string(),
                    (arc.radius / s).to_string(),
                    match arc.orientation {
                        Orientation::Ccw => "ccw".to_string(),
                        Orientation::Cw => "cw".to_string(),
                    },
                ]),
            }
            row.push((p.sse / (s * s)).to_string());
            row
        })
        .collect();
    doc.table(
        "primitives",
        &["kind", "start", "end", "x0", "y0", "x1", "y1", "center_x", "center_y", "radius", "orientation", "sse"],
        rows,
    );
    doc.field("totals.t_count", result.total.t_count)
        .field("totals.t_sse", result.total.t_sse / (s * s))
        .field("stats.feasibility_windows", stats.feasibility_windows)
        .field("stats.segment_evaluations", stats.segment_evaluations)
        .field("stats.arc_evaluations", stats.arc_evaluations);
    if args.timing {
        doc.field("timing.seconds", format!("{:.6}", elapsed.as_secs_f64()));
    }

    if let Some(path) = &args.svg {
        write_output(path, &svg::render(&points, &result, scale))?;
    }
    let text = doc.render();
    match &args.out {
        Some(path) => write_output(path, &text).map(|_| String::new()),
        None => Ok(text),
    }
}

fn rational_div(r: &Rational, scale: i64) -> Rational {
    r / int_rational(scale)
}

pub fn cmd_annulus(args: &AnnulusArgs) -> Result<String, CliError> {
    let clip = clip_for(args.alpha)?;
    let tol = args.tolerance.map(|t| positive("tolerance", t)).transpose()?;
    let file = read_input(&args.input)?;
    let scale = file.scale.unwrap_or_else(|| match tol {
        Some(t) => default_scale(t),
        None => extent_scale(&file.points, 30),
    });
    let points = quantize(&file, scale)?;
    let result = min_width_annulus(&points, &clip).map_err(|e| match e {
        AnnulusError::DegeneratePointSet | AnnulusError::TooFewPoints(_) => CliError::Input(e.to_string()),
        AnnulusError::InvalidTolerance => CliError::Params(e.to_string()),
        AnnulusError::Delaunay(d) => CliError::Input(d.to_string()),
    })?;

    let s = scale as f64;
    let cx = rational_div(&result.center.x, scale);
    let cy = rational_div(&result.center.y, scale);
    let mut doc = ResultDocument::new();
    doc.field("format", FORMAT)
        .field("command", "annulus")
        .field("input.path", args.input.display())
        .field("input.vertices", points.len())
        .field("input.scale", scale)
        .field("params.alpha_deg", args.alpha)
        .field("annulus.center_exact", format!("{cx},{cy}"))
        .field("annulus.center", format!("{},{}", rational_to_f64(&cx), rational_to_f64(&cy)))
        .field("annulus.r_inner", rational_to_f64(&result.r_inner_sq).sqrt() / s)
        .field("annulus.r_outer", rational_to_f64(&result.r_outer_sq).sqrt() / s)
        .field("annulus.width", result.width / s)
        .field("annulus.clip_half_side", rational_to_f64(&result.clip_half_side) / s);
    if let Some(t) = tol {
        doc.field("params.tolerance", t).field("annulus.feasible", result.feasible_for(t * s));
    }
    Ok(doc.render())
}

fn bench_points(args: &BenchArgs, n: usize) -> Result<Vec<IntPoint>, CliError> {
    let hull_input = args.algo == BenchAlgo::ConvexOrdered || args.generator != HullGenerator::Uniform;
    if !hull_input {
        return Ok(uniform_grid_points(n, args.seed, 1 << 24));
    }
    let sample = args.generator.generate(n, args.seed).map_err(hull_error)?;
    let hull = finalize_hull(&sample, grid_scale_for(&sample, 40)).map_err(hull_error)?;
    Ok(hull.vertices)
}

fn hull_error(e: HullError) -> CliError {
    match e {
        HullError::TooFewVertices(_) | HullError::InvalidScale => CliError::Params(e.to_string()),
        HullError::CollinearDirections(_) | HullError::Degenerate => CliError::Internal(e.to_string()),
    }
}

/// Order-independent digest of a triangle set.
fn digest(triangles: &[[u32; 3]]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for t in triangles {
        for v in t {
            for b in v.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
    }
    format!("{h:016x}")
}

pub fn cmd_bench(args: &BenchArgs, threads: usize) -> Result<String, CliError> {
    if args.repeat == 0 {
        return Err(CliError::Params("--repeat must be at least 1".into()));
    }
    if let Some(&n) = args.n.iter().find(|&&n| n < 3) {
        return Err(CliError::Params(format!("--n must be at least 3, got {n}")));
    }
    let opts = BuildOptions { threads, ..BuildOptions::default() };
    let mut rows = Vec::new();
    let mut previous: Option<f64> = None;
    for &n in &args.n {
        let points = bench_points(args, n)?;
        let mut times = Vec::with_capacity(args.repeat);
        let mut triangles = Vec::new();
        for _ in 0..args.repeat {
            let started = Instant::now();
            let mesh = match args.algo {
                BenchAlgo::Closest => build_closest_with(&points, &opts),
                BenchAlgo::Farthest => build_farthest(&points),
                BenchAlgo::ConvexOrdered => build_convex_ordered(&points, MeshKind::Closest),
            }
            .map_err(|e| CliError::Internal(e.to_string()))?;
            times.push(started.elapsed().as_secs_f64());
            triangles = mesh.triangle_set();
        }
        let best = times.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        let ratio = previous.map_or("-".to_string(), |p| format!("{:.3}", best / p));
        previous = Some(best);
        rows.push(vec![
            n.to_string(),
            points.len().to_string(),
            format!("{best:.6}"),
            format!("{mean:.6}"),
            ratio,
            triangles.len().to_string(),
            digest(&triangles),
        ]);
    }
    let algo = match args.algo {
        BenchAlgo::Closest => "closest",
        BenchAlgo::Farthest => "farthest",
        BenchAlgo::ConvexOrdered => "convex-ordered",
    };
    let mut doc = ResultDocument::new();
    doc.field("format", FORMAT)
        .field("command", "bench")
        .field("params.algo", algo)
        .field("params.gen", args.generator)
        .field("params.repeat", args.repeat)
        .field("params.seed", args.seed)
        .field("params.threads", threads)
        .table("timings", &["n", "points", "best_s", "mean_s", "ratio", "triangles", "digest"], rows);
    Ok(doc.render())
}

pub fn cmd_gen_hull(args: &GenHullArgs, warn: &mut dyn Write) -> Result<String, CliError> {
    if !(8..=58).contains(&args.bits) {
        return Err(CliError::Params("--bits must lie in 8..=58".into()));
    }
    let sample = match args.algo {
        HullGenerator::FarthestDelaunay => {
            let fdt = polyarc::random_hull::gen_fdt_hull(args.n, args.seed).map_err(hull_error)?;
            if let Some(w) = &fdt.warning {
                let _ = writeln!(warn, "warning: {w}");
            }
            fdt.sample
        }
        g => g.generate(args.n, args.seed).map_err(hull_error)?,
    };
    let scale = extent_scale(&sample.vertices, args.bits);
    let hull = finalize_hull(&sample, scale as f64).map_err(hull_error)?;
    let s = scale as f64;
    let file = PolylineFile {
        points: hull.vertices.iter().map(|p| (p.x as f64 / s, p.y as f64 / s)).collect(),
        scale: Some(scale),
    };
    let text = file.render();
    match &args.out {
        Some(path) => write_output(path, &text).map(|_| String::new()),
        None => Ok(text),
    }
}

fn resolve_threads(requested: Option<usize>) -> Result<usize, CliError> {
    match requested {
        Some(0) => Err(CliError::Params("--threads must be at least 1".into())),
        Some(t) => Ok(t),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub fn execute(cli: &Cli, warn: &mut dyn Write) -> Result<String, CliError> {
    let threads = resolve_threads(cli.threads)?;
    // Fails harmlessly if a pool already exists in this process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    match &cli.command {
        Command::Compress(a) => cmd_compress(a),
        Command::Annulus(a) => cmd_annulus(a),
        Command::Bench(a) => cmd_bench(a, threads),
        Command::GenHull(a) => cmd_gen_hull(a, warn),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
