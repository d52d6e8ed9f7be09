//! `sl2r` command line: density tables, geodesic sampling dumps, OBJ
//! mesh export, and the verification suites.
//!
//! Exit codes are stable contracts: 0 ok, 1 verification failure,
//! 2 argument/domain error, 3 I/O error, 4 numerical failure.

mod mesh;
mod output;
mod pairs;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sl2r::density::{self, TableMode};
use sl2r::error::Error as GeomError;
use sl2r::geodesic::{self, GeodesicInitial};
use sl2r::tiling::TilingParams;
use sl2r::verify;

use output::Format;

const EXIT_VERIFY: u8 = 1;
const EXIT_ARGS: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

#[derive(Parser)]
#[command(name = "sl2r", version, about = "Geometry of SL(2,R)~ space: prism tilings, fibre-like cylinders, packing and covering densities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a packing or covering density table.
    Table(TableArgs),
    /// Sample a geodesic from the origin at uniform arc length.
    Geodesic(GeodesicArgs),
    /// Export a cylinder or prism side surface as Wavefront OBJ.
    #[command(subcommand)]
    Mesh(MeshCommand),
    /// Run a verification suite and report pass/fail per check.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Packing,
    Covering,
}

#[derive(Args)]
struct TableArgs {
    /// Packing (inscribed) or covering (circumscribed) densities.
    #[arg(value_enum)]
    mode: Mode,
    /// Comma list of p:q entries; coordinates may be inclusive ranges,
    /// e.g. "3:7,7:3" or "3..6:7".
    #[arg(long)]
    pairs: String,
    /// Drop invalid pairs instead of failing on the first one.
    #[arg(long)]
    skip_invalid: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output path; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Decimal digits in CSV/Markdown cells (1..=15).
    #[arg(long, default_value_t = 5)]
    precision: usize,
    /// Worker threads for row evaluation; SLR_JOBS is the fallback.
    #[arg(long)]
    jobs: Option<usize>,
    /// Include a provenance header (omitted by default so identical
    /// invocations are byte-identical).
    #[arg(long)]
    meta: bool,
}

#[derive(Args)]
struct GeodesicArgs {
    /// Altitude angle alpha in [-pi/2, pi/2].
    #[arg(long)]
    alpha: f64,
    /// Longitude lambda in (-pi, pi].
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    /// Final arc length.
    #[arg(long)]
    s_end: f64,
    /// Number of samples including both endpoints (>= 2).
    #[arg(long)]
    steps: usize,
    /// Add integrator columns and a max-deviation footer.
    #[arg(long)]
    ode: bool,
    /// Integrator relative tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    precision: usize,
}

#[derive(Subcommand)]
enum MeshCommand {
    /// Side surface of a bounded fibre-like cylinder.
    Cylinder {
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        psi: f64,
        /// Samples around the base circle (>= 8).
        #[arg(long, default_value_t = 32)]
        angular: usize,
        /// Fibre levels (>= 2).
        #[arg(long, default_value_t = 8)]
        axial: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Side sheets of a bounded regular prism.
    Prism {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Height; the tiling height Psi(p, q) when omitted.
        #[arg(long)]
        psi: Option<f64>,
        /// Samples along each side curve (>= 8).
        #[arg(long, default_value_t = 32)]
        angular: usize,
        /// Fibre levels (>= 2).
        #[arg(long, default_value_t = 8)]
        axial: usize,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Tables,
    Identities,
    Ode,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn args(message: impl Into<String>) -> Self {
        Self { code: EXIT_ARGS, message: message.into() }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        let code = match &e {
            GeomError::InvalidArgument(_)
            | GeomError::OutsideModel { .. }
            | GeomError::InvalidTiling { .. }
            | GeomError::InvalidPairAt { .. }
            | GeomError::DegenerateSection { .. }
            | GeomError::UnboundedCylinder => EXIT_ARGS,
            GeomError::QuadratureFailed { .. }
            | GeomError::IntegrationFailed { .. }
            | GeomError::NoConvergence { .. }
            | GeomError::Inconsistent { .. }
            | GeomError::GroupConstruction { .. } => EXIT_NUMERIC,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: EXIT_IO, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table(args) => cmd_table(args),
        Command::Geodesic(args) => cmd_geodesic(args),
        Command::Mesh(args) => cmd_mesh(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_out(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => std::io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn check_precision(precision: usize) -> Result<(), Failure> {
    if !(1..=15).contains(&precision) {
        return Err(Failure::args(format!("precision {precision} outside 1..=15")));
    }
    Ok(())
}

fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    check_precision(args.precision)?;
    let mode = match args.mode {
        Mode::Packing => TableMode::Packing,
        Mode::Covering => TableMode::Covering,
    };
    let mut pairs = pairs::parse_pairs(&args.pairs).map_err(|e| Failure::args(e.to_string()))?;
    if args.skip_invalid {
        pairs.retain(|&(p, q)| TilingParams::new(p, q).is_ok());
    }

    let jobs = args
        .jobs
        .or_else(|| std::env::var("SLR_JOBS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1);
    let rows = if jobs == 1 {
        density::generate_table(mode, &pairs)?
    } else {
        parallel_table(mode, &pairs, jobs)?
    };

    let meta = args.meta.then(|| {
        format!(
            "sl2r {} table {} pairs={} precision={}",
            env!("CARGO_PKG_VERSION"),
            match mode {
                TableMode::Packing => "packing",
                TableMode::Covering => "covering",
            },
            args.pairs,
            args.precision
        )
    });
    let body = output::render_table(&rows, args.format, args.precision, meta.as_deref())
        .map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;
    write_out(args.output.as_deref(), &body)
}

/// Row evaluation fanned out over a fixed-size pool; output stays in
/// input order.
fn parallel_table(
    mode: TableMode,
    pairs: &[(u32, u32)],
    jobs: usize,
) -> Result<Vec<density::DensityRow>, Failure> {
    use rayon::prelude::*;
    // Validate serially so the first bad pair is reported with its index.
    let mut params = Vec::with_capacity(pairs.len());
    for (index, &(p, q)) in pairs.iter().enumerate() {
        match TilingParams::new(p, q) {
            Ok(v) => params.push(v),
            Err(GeomError::InvalidTiling { constraint, .. }) => {
                return Err(GeomError::InvalidPairAt { index, p, q, constraint }.into())
            }
            Err(e) => return Err(e.into()),
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure { code: EXIT_NUMERIC, message: e.to_string() })?;
    let rows: Result<Vec<_>, GeomError> = pool.install(|| {
        params
            .par_iter()
            .map(|params| match mode {
                TableMode::Packing => density::packing_density(params),
                TableMode::Covering => density::covering_density(params),
            })
            .collect()
    });
    Ok(rows?)
}

fn cmd_geodesic(args: GeodesicArgs) -> Result<(), Failure> {
    check_precision(args.precision)?;
    if args.steps < 2 {
        return Err(Failure::args(format!("steps {} below minimum 2", args.steps)));
    }
    if !(args.s_end.is_finite() && args.s_end > 0.0) {
        return Err(Failure::args(format!("s-end {} must be positive", args.s_end)));
    }
    let init = GeodesicInitial::new(args.lambda, args.alpha)?;
    let s_values: Vec<f64> = (0..args.steps)
        .map(|i| args.s_end * i as f64 / (args.steps - 1) as f64)
        .collect();
    let closed: Vec<_> = s_values.iter().map(|&s| geodesic::closed_form(&init, s)).collect();

    if args.ode {
        match geodesic::ode_at(&init, &s_values, args.tol) {
            Ok(ode) => {
                let body = output::render_geodesic(&closed, Some(&ode), args.precision)
                    .map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;
                write_out(args.output.as_deref(), &body)
            }
            Err(e) => {
                // Keep the closed-form columns; the integrator failure
                // decides the exit code.
                let body = output::render_geodesic(&closed, None, args.precision)
                    .map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;
                write_out(args.output.as_deref(), &body)?;
                Err(Failure { code: EXIT_NUMERIC, message: e.to_string() })
            }
        }
    } else {
        let body = output::render_geodesic(&closed, None, args.precision)
            .map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;
        write_out(args.output.as_deref(), &body)
    }
}

fn cmd_mesh(command: MeshCommand) -> Result<(), Failure> {
    let (mesh, output) = match command {
        MeshCommand::Cylinder { radius, psi, angular, axial, output } => (
            mesh::cylinder_mesh(radius, psi, angular, axial)
                .map_err(|e| Failure::args(e.to_string()))?,
            output,
        ),
        MeshCommand::Prism { p, q, psi, angular, axial, output } => {
            let params = TilingParams::new(p, q)?;
            let psi = psi.unwrap_or_else(|| params.psi());
            if !(psi.is_finite() && psi > 0.0) {
                return Err(Failure::args(format!("psi {psi} must be positive")));
            }
            (
                mesh::prism_mesh(&params, psi, angular, axial)
                    .map_err(|e| Failure::args(e.to_string()))?,
                output,
            )
        }
    };
    write_out(Some(&output), &mesh.to_obj())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let checks = match args.suite {
        Suite::Tables => verify::check_tables()?,
        Suite::Identities => verify::check_identities(),
        Suite::Ode => verify::check_ode(),
        Suite::All => verify::check_all()?,
    };
    let mut all_ok = true;
    for c in &checks {
        println!(
            "{} {} (worst residual {:.3e}) {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.worst_residual,
            c.detail
        );
        all_ok &= c.passed;
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFY, message: "verification failed".into() })
    }
}
