//! Batch front end: every toolkit operation as a subcommand. Inputs are
//! inline JSON or file paths; outputs are JSON (exact rationals as strings,
//! floats only as shadows) or OFF meshes for 2D/3D geometry. Identical
//! inputs and seed give byte-identical output.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use geomnum::cubic::{
    fundamental_unit, solve_cubic_pell, solve_thue, CubicError, ThueEquation, DEFAULT_SEARCH_BOUND,
    DEFAULT_UNIT_BOX,
};
use geomnum::delone::{
    build_l_tiling, grow_empty_sphere, validate_delone_set, verify_l_tiling, AxisBox, DeloneError,
    DeloneParams,
};
use geomnum::geometry::Point;
use geomnum::io::{
    covering_density_to_value, covering_radius_to_value, delaunay_to_value, equation_to_value,
    facet_bound_to_value, form_from_value, grown_solid_to_value, optimize_to_value,
    pell_report_to_value, points_from_value, solid_to_off, thue_report_to_value, tiling_from_value,
    tiling_to_off, tiling_to_value, to_json_string, unit_to_value, validation_to_value,
    violations_to_value, voronoi_to_off, voronoi_to_value, IoError,
};
use geomnum::lattice::{
    covering_density, covering_radius, facet_bound_check, lattice_delaunay, optimize_covering,
    voronoi_cell, LatticeError, OptimizeConfig, QuadraticForm,
};
use geomnum::rational::parse_rational;
use geomnum::Rational;

#[derive(Parser)]
#[command(
    name = "geomnum",
    version,
    about = "Geometry-of-numbers toolkit: empty-sphere tilings, lattice coverings, cubic Diophantine equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file; relative paths land in $GEOMNUM_OUT_DIR when set.
    /// Default is standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format. OFF applies to triangulate, grow, and lattice voronoi
    /// in two or three dimensions.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Build the empty-sphere tiling of a point set
    Triangulate(PointsArg),
    /// Grow one locally maximal empty sphere from a seed location
    Grow {
        #[command(flatten)]
        points: PointsArg,
        /// Seed location as a coordinate array, e.g. '["1/3","1/2"]'
        #[arg(long)]
        at: String,
    },
    /// Re-check a claimed tiling artifact and list every violation
    Verify {
        /// Tiling artifact, inline JSON or a path
        #[arg(long)]
        tiling: String,
    },
    /// Check the packing radius r and covering radius R of a point set
    /// over an eroded window
    ValidateRset {
        #[command(flatten)]
        points: PointsArg,
        /// Packing radius r, a rational like "1/2"
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Squared covering radius R², a rational like "1/2"
        #[arg(long = "R2", allow_hyphen_values = true)]
        covering_r2: String,
        /// Window erosion margin, a rational at least R
        #[arg(long, allow_hyphen_values = true)]
        margin: String,
        /// Window as [lo, hi] corner arrays, inline JSON or a path
        #[arg(long)]
        window: String,
    },
    /// Lattice covering computations on positive quadratic forms
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Facet-count bound 2^d (h+1) - 2 for stereohedra of index h
    Bounds {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        h: u64,
        /// Observed facet count to audit against the bound
        #[arg(long)]
        facets: Option<u64>,
    },
    /// Cubic Diophantine solvers
    #[command(subcommand)]
    Cubic(CubicCmd),
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Delone subdivision: translation classes of cells with circumcenters
    Delaunay(FormArg),
    /// Voronoi cell of the origin: vertices, facet vectors, volume
    Voronoi(FormArg),
    /// Exact squared covering radius
    CoveringRadius(FormArg),
    /// Covering density (ball volume over cell volume)
    CoveringDensity(FormArg),
    /// Pattern search for a thinner covering
    Optimize {
        #[command(flatten)]
        start: StartArg,
        /// Random seed for the poll directions
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Evaluation budget
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum CubicCmd {
    /// Solve q·x³ + y³ = 1 from the fundamental unit of Z[∛q]
    Pell {
        /// Radicand, at least 2 and not a perfect cube
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        /// Coefficient box for the unit scan
        #[arg(long = "box", default_value_t = DEFAULT_UNIT_BOX)]
        search_box: i64,
    },
    /// Solve x³ + a·x²y + b·xy² + c·y³ = 1
    Thue {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        /// Coordinate bound for the exact search
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: i64,
    },
    /// Fundamental unit of Z[∛q] in (0, 1)
    Unit {
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long = "box", default_value_t = DEFAULT_UNIT_BOX)]
        search_box: i64,
    },
    /// Discriminant of x³ + a·x²y + b·xy² + c·y³
    Discriminant {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
    },
}

#[derive(Args)]
struct PointsArg {
    /// Point set as an array of coordinate arrays ("3/2", "0.25" parse
    /// exactly), inline JSON or a path
    #[arg(long)]
    points: String,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FormArg {
    /// Gram matrix rows, inline JSON or a path
    #[arg(long)]
    gram: Option<String>,
    /// Basis row vectors (the Gram matrix is formed exactly)
    #[arg(long)]
    basis: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StartArg {
    /// Starting Gram matrix rows, inline JSON or a path
    #[arg(long)]
    gram: Option<String>,
    /// Starting basis row vectors
    #[arg(long)]
    basis: Option<String>,
    /// Start from the identity form in this dimension
    #[arg(long)]
    dim: Option<usize>,
}

enum CliError {
    Delone(DeloneError),
    Lattice(LatticeError),
    Cubic(CubicError),
    Artifact(IoError),
    File { path: PathBuf, source: std::io::Error },
    Usage(String),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Delone(_) => "delone",
            CliError::Lattice(_) => "lattice",
            CliError::Cubic(_) => "cubic",
            CliError::Artifact(_) => "io",
            CliError::File { .. } => "file",
            CliError::Usage(_) => "usage",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Delone(e) => e.fmt(f),
            CliError::Lattice(e) => e.fmt(f),
            CliError::Cubic(e) => e.fmt(f),
            CliError::Artifact(e) => e.fmt(f),
            CliError::File { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<DeloneError> for CliError {
    fn from(e: DeloneError) -> Self {
        CliError::Delone(e)
    }
}
impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Lattice(e)
    }
}
impl From<CubicError> for CliError {
    fn from(e: CubicError) -> Self {
        CliError::Cubic(e)
    }
}
impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Artifact(e)
    }
}

/// Inline JSON or a file path: anything that could begin a JSON document is
/// parsed in place, everything else is read from disk.
fn read_payload(arg: &str) -> Result<Value, CliError> {
    let inline = matches!(
        arg.trim_start().as_bytes().first(),
        Some(b'[' | b'{' | b'"' | b'-' | b'0'..=b'9')
    );
    let text = if inline {
        arg.to_owned()
    } else {
        fs::read_to_string(arg).map_err(|source| CliError::File {
            path: arg.into(),
            source,
        })?
    };
    Ok(serde_json::from_str(&text).map_err(IoError::Json)?)
}

impl PointsArg {
    fn points(&self) -> Result<Vec<Point>, CliError> {
        Ok(points_from_value(&read_payload(&self.points)?)?)
    }
}

fn form_payload(key: &str, arg: &str) -> Result<QuadraticForm, CliError> {
    let v = read_payload(arg)?;
    // A bare matrix means whatever the flag says; objects speak for
    // themselves.
    let wrapped = if v.is_object() { v } else { json!({ key: v }) };
    Ok(form_from_value(&wrapped)?)
}

impl FormArg {
    fn form(&self) -> Result<QuadraticForm, CliError> {
        match (&self.gram, &self.basis) {
            (Some(g), None) => form_payload("gram", g),
            (None, Some(b)) => form_payload("basis", b),
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

fn identity_form(d: usize) -> Result<QuadraticForm, CliError> {
    let rows: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| Rational::from_integer(i64::from(i == j).into()))
                .collect()
        })
        .collect();
    Ok(QuadraticForm::new(rows)?)
}

impl StartArg {
    fn form(&self) -> Result<QuadraticForm, CliError> {
        match (&self.gram, &self.basis, self.dim) {
            (Some(g), None, None) => form_payload("gram", g),
            (None, Some(b), None) => form_payload("basis", b),
            (None, None, Some(d)) => identity_form(d),
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

fn parse_point(arg: &str) -> Result<Point, CliError> {
    let v = read_payload(arg)?;
    let pts = points_from_value(&Value::Array(vec![v]))?;
    Ok(pts.into_iter().next().expect("one wrapped point"))
}

fn rational_flag(what: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Usage(format!("--{what}: {e}")))
}

fn parse_window(arg: &str) -> Result<AxisBox, CliError> {
    let corners = points_from_value(&read_payload(arg)?)?;
    if corners.len() != 2 {
        return Err(CliError::Usage(
            "--window: expected [lo, hi] corner arrays".into(),
        ));
    }
    let mut it = corners.into_iter();
    Ok(AxisBox {
        lo: it.next().expect("two corners").coords,
        hi: it.next().expect("two corners").coords,
    })
}

fn json_only(format: Format) -> Result<(), CliError> {
    if format == Format::Off {
        return Err(CliError::Usage(
            "OFF export applies to triangulate, grow, and lattice voronoi".into(),
        ));
    }
    Ok(())
}

fn run(command: Command, format: Format) -> Result<String, CliError> {
    let text = match command {
        Command::Triangulate(arg) => {
            let tiling = build_l_tiling(&arg.points()?)?;
            match format {
                Format::Json => to_json_string(&tiling_to_value(&tiling)),
                Format::Off => tiling_to_off(&tiling)?,
            }
        }
        Command::Grow { points, at } => {
            let pts = points.points()?;
            let solid = grow_empty_sphere(&pts, &parse_point(&at)?)?;
            match format {
                Format::Json => to_json_string(&grown_solid_to_value(&pts, &solid)),
                Format::Off => solid_to_off(&pts, &solid)?,
            }
        }
        Command::Verify { tiling } => {
            json_only(format)?;
            let tiling = tiling_from_value(&read_payload(&tiling)?)?;
            to_json_string(&violations_to_value(&verify_l_tiling(&tiling)))
        }
        Command::ValidateRset {
            points,
            r,
            covering_r2,
            margin,
            window,
        } => {
            json_only(format)?;
            let params = DeloneParams {
                packing_radius: rational_flag("r", &r)?,
                covering_radius_squared: rational_flag("R2", &covering_r2)?,
                window: parse_window(&window)?,
                margin: rational_flag("margin", &margin)?,
            };
            let report = validate_delone_set(&points.points()?, &params)?;
            to_json_string(&validation_to_value(&report))
        }
        Command::Lattice(cmd) => match cmd {
            LatticeCmd::Delaunay(arg) => {
                json_only(format)?;
                to_json_string(&delaunay_to_value(&lattice_delaunay(&arg.form()?)?))
            }
            LatticeCmd::Voronoi(arg) => {
                let cell = voronoi_cell(&arg.form()?)?;
                match format {
                    Format::Json => to_json_string(&voronoi_to_value(&cell)),
                    Format::Off => voronoi_to_off(&cell)?,
                }
            }
            LatticeCmd::CoveringRadius(arg) => {
                json_only(format)?;
                let (r2, rf) = covering_radius(&arg.form()?)?;
                to_json_string(&covering_radius_to_value(&r2, rf))
            }
            LatticeCmd::CoveringDensity(arg) => {
                json_only(format)?;
                let form = arg.form()?;
                let density = covering_density(&form)?;
                to_json_string(&covering_density_to_value(form.dim(), density))
            }
            LatticeCmd::Optimize {
                start,
                seed,
                budget,
            } => {
                json_only(format)?;
                let config = OptimizeConfig {
                    seed,
                    budget,
                    ..OptimizeConfig::default()
                };
                let outcome = optimize_covering(&start.form()?, &config)?;
                to_json_string(&optimize_to_value(&outcome))
            }
        },
        Command::Bounds { d, h, facets } => {
            json_only(format)?;
            to_json_string(&facet_bound_to_value(&facet_bound_check(facets, d, h)?))
        }
        Command::Cubic(cmd) => {
            json_only(format)?;
            match cmd {
                CubicCmd::Pell { q, search_box } => {
                    let report = solve_cubic_pell(q, search_box)?;
                    to_json_string(&pell_report_to_value(q, &report))
                }
                CubicCmd::Thue { a, b, c, bound } => {
                    let eq = ThueEquation::new(a, b, c);
                    let report = solve_thue(&eq, bound)?;
                    to_json_string(&thue_report_to_value(&eq, &report))
                }
                CubicCmd::Unit { q, search_box } => {
                    to_json_string(&unit_to_value(&fundamental_unit(q, search_box)?))
                }
                CubicCmd::Discriminant { a, b, c } => {
                    to_json_string(&equation_to_value(&ThueEquation::new(a, b, c)))
                }
            }
        }
    };
    Ok(text)
}

fn resolve_out(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_owned();
    }
    match std::env::var_os("GEOMNUM_OUT_DIR") {
        Some(dir) => Path::new(&dir).join(path),
        None => path.to_owned(),
    }
}

fn emit_error(code: &str, message: &str) {
    let v = json!({"error": {"code": code, "message": message}});
    eprintln!("{}", serde_json::to_string(&v).expect("error JSON serializes"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            emit_error("usage", &e.to_string());
            return ExitCode::from(1);
        }
    };
    let out = cli.out;
    match run(cli.command, cli.format) {
        Ok(text) => match out {
            Some(path) => {
                let path = resolve_out(&path);
                match fs::write(&path, &text) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        emit_error("file", &format!("{}: {e}", path.display()));
                        ExitCode::from(1)
                    }
                }
            }
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(e) => {
            emit_error(e.code(), &e.to_string());
            ExitCode::from(1)
        }
    }
}
