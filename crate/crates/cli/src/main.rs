//! `torsimax`: compute triangle energies, distance efficiencies and
//! p-torsion functions, run parameter sweeps to CSV, and execute the
//! verification suite.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use torsimax_core::distance::{self, phi_infinity};
use torsimax_core::domains::{DomainDescriptor, HexRemoval};
use torsimax_core::energy::{self, vertex_distance_integral_quadrature};
use torsimax_core::geometry::{LatticeDomain, Point, Triangle};
use torsimax_core::grid::GridMask;
use torsimax_core::suite::{constant_note, run_all, SuiteConfig};
use torsimax_core::text::sig12;
use torsimax_core::torsion::{
    perforated_disc_mask, phi_p, phi_p_1d, phi_p_1d_grid, psi_p, shape_functionals,
    solve_torsion, SolverConfig,
};
use torsimax_core::Error as CoreError;

#[derive(Parser)]
#[command(name = "torsimax", version, about = "Mean-to-max efficiency laboratory")]
struct Cli {
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy of a single triangle.
    Energy(EnergyArgs),
    /// Distance efficiency of a domain.
    Phi(PhiArgs),
    /// Discrete-boundary efficiency of a lattice domain.
    PhiD(PhiDArgs),
    /// Solve the p-torsion problem on a domain.
    Torsion(TorsionArgs),
    /// Parameter sweeps written as CSV.
    Sweep(SweepArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EnergyArgs {
    /// Three vertices as "x,y x,y x,y".
    #[arg(long, conflicts_with = "sides")]
    points: Option<String>,
    /// Three side lengths "l1,l2,l3"; requires --inscribed.
    #[arg(long, requires = "inscribed")]
    sides: Option<String>,
    /// Interpret --sides as a triangle inscribed in the unit circle.
    #[arg(long)]
    inscribed: bool,
    /// Add an independent quadrature cross-check of the energy.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Clone)]
struct DomainArgs {
    /// Builtin kind (disc, rectangle, interval-union, disc-union,
    /// honeycomb) or the path of a domain JSON file.
    #[arg(long)]
    domain: String,
    /// Disc or honeycomb radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Rectangle width.
    #[arg(long)]
    a: Option<f64>,
    /// Rectangle height.
    #[arg(long)]
    b: Option<f64>,
    /// Interval radii for interval-union.
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
    /// Number of discs in the disc-union family.
    #[arg(long)]
    n: Option<usize>,
    /// Gap between consecutive discs of the disc-union family.
    #[arg(long)]
    spacing: Option<f64>,
    /// Lattice spacing (honeycomb perforation, or lattice approximation).
    #[arg(long)]
    eps: Option<f64>,
    /// Which hexagonal-tiling points the honeycomb construction removes.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Centers,
    Vertices,
}

impl From<VariantArg> for HexRemoval {
    fn from(v: VariantArg) -> HexRemoval {
        match v {
            VariantArg::Centers => HexRemoval::Centers,
            VariantArg::Vertices => HexRemoval::Vertices,
        }
    }
}

#[derive(Args)]
struct PhiArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// Grid spacing, or "auto" (eps/16) for perforated domains.
    #[arg(long)]
    h: String,
}

#[derive(Args)]
struct PhiDArgs {
    #[command(flatten)]
    domain: DomainArgs,
}

#[derive(Args)]
struct TorsionArgs {
    #[command(flatten)]
    domain: DomainArgs,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Grid spacing, or "auto" (eps/16) for perforated domains.
    #[arg(long)]
    h: String,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the full solved field as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(subcommand)]
    kind: SweepKind,
}

#[derive(Subcommand)]
enum SweepKind {
    /// Honeycomb-perforated disc over a list of lattice spacings.
    Honeycomb {
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        /// Grid spacing, or "auto" for eps/16 per point.
        #[arg(long, default_value = "auto")]
        h: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Centers)]
        variant: VariantArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Torsion functionals of the perforated unit disc over hole spacings.
    Perforated {
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<f64>,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long)]
        h: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Discrete-boundary efficiency of lattice approximations over eps.
    EpsLattice {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long = "eps-list", value_delimiter = ',', required = true)]
        eps_list: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Torsion functionals of the shrinking disc-union family over n.
    DiscUnion {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 2.0)]
        spacing: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long)]
        h: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Downscale grids; PDE tolerances widen to 5%.
    #[arg(long)]
    fast: bool,
}

enum Failure {
    Parse(String),
    Core(CoreError),
    Io(std::io::Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(msg) => write!(f, "{msg}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(std::io::Error::new(std::io::ErrorKind::Other, e))
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) | Failure::Io(_) => 2,
            Failure::Core(e) => match e {
                CoreError::Json(_)
                | CoreError::InvalidParameters(_)
                | CoreError::InvalidP(_)
                | CoreError::NonFiniteCoordinate(_)
                | CoreError::OutsideBall { .. }
                | CoreError::EmptyList => 2,
                CoreError::NotConverged(_) => 4,
                CoreError::ResolutionTooCoarse { .. } => 5,
                _ => 3,
            },
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn parse_error(msg: impl Into<String>) -> Failure {
    Failure::Parse(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("TORSIMAX_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global();
        }
    }
    let outcome = match cli.command {
        Command::Energy(args) => cmd_energy(args),
        Command::Phi(args) => cmd_phi(args),
        Command::PhiD(args) => cmd_phi_d(args),
        Command::Torsion(args) => cmd_torsion(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => return cmd_verify(args, cli.seed),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn parse_point(text: &str) -> CliResult<Point> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| parse_error(format!("expected \"x,y\", got {text:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| parse_error(format!("invalid coordinate {s:?}")))
    };
    Ok(Point::new(parse(x)?, parse(y)?))
}

fn parse_floats(text: &str, expected: usize, what: &str) -> CliResult<Vec<f64>> {
    let values: Vec<f64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| parse_error(format!("invalid {what} entry {s:?}")))
        })
        .collect::<CliResult<_>>()?;
    if values.len() != expected {
        return Err(parse_error(format!(
            "expected {expected} {what} values, got {}",
            values.len()
        )));
    }
    Ok(values)
}

fn quadrature_energy(t: &Triangle) -> CliResult<f64> {
    let integral = vertex_distance_integral_quadrature(t, 1e-9)?;
    Ok(integral / (t.area() * t.circumradius()))
}

fn cmd_energy(args: EnergyArgs) -> CliResult<()> {
    let mut value = if let Some(points) = &args.points {
        let coords: Vec<Point> = points
            .split_whitespace()
            .map(parse_point)
            .collect::<CliResult<_>>()?;
        let [a, b, c]: [Point; 3] = coords
            .try_into()
            .map_err(|_| parse_error("--points needs exactly three \"x,y\" pairs"))?;
        let t = Triangle::new(a, b, c)?;
        let report = energy::energy(&t)?;
        let mut value = serde_json::to_value(&report).map_err(CoreError::from)?;
        if args.oracle {
            let map = value.as_object_mut().expect("report is an object");
            map.insert(
                "quadrature".into(),
                serde_json::json!(quadrature_energy(&t)?),
            );
        }
        value
    } else if let Some(sides) = &args.sides {
        let l = parse_floats(sides, 3, "side length")?;
        let e = energy::energy_from_sides(l[0], l[1], l[2])?;
        let mut value = serde_json::json!({
            "l1": l[0],
            "l2": l[1],
            "l3": l[2],
            "energy": e,
            "method": "closed_form",
        });
        if args.oracle {
            let t = triangle_from_sides(l[0], l[1], l[2])?;
            let map = value.as_object_mut().expect("report is an object");
            map.insert(
                "quadrature".into(),
                serde_json::json!(quadrature_energy(&t)?),
            );
        }
        value
    } else {
        return Err(parse_error("provide --points or --sides with --inscribed"));
    };
    round_floats(&mut value);
    println!(
        "{}",
        serde_json::to_string_pretty(&value).map_err(CoreError::from)?
    );
    Ok(())
}

/// Any planar realization works for the cross-check: the energy is
/// similarity invariant, so the circumradius normalization is irrelevant.
fn triangle_from_sides(l1: f64, l2: f64, l3: f64) -> CliResult<Triangle> {
    let x = (l1 * l1 + l3 * l3 - l2 * l2) / (2.0 * l1);
    let y = (l3 * l3 - x * x).max(0.0).sqrt();
    Ok(Triangle::new(
        Point::new(0.0, 0.0),
        Point::new(l1, 0.0),
        Point::new(x, y),
    )?)
}

/// Rewrites every JSON number through the canonical 12-significant-digit
/// formatting so reports are deterministic across platforms.
fn round_floats(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if n.as_i64().is_none() && n.as_u64().is_none() {
                    if let Ok(rounded) = sig12(x).parse::<f64>() {
                        if let Some(num) = serde_json::Number::from_f64(rounded) {
                            *n = num;
                        }
                    }
                }
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(round_floats),
        serde_json::Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn build_domain(args: &DomainArgs) -> CliResult<DomainDescriptor> {
    let spec = args.domain.as_str();
    if Path::new(spec).exists() || spec.ends_with(".json") {
        let text = std::fs::read_to_string(spec).map_err(|e| {
            parse_error(format!("cannot read domain file {spec}: {e}"))
        })?;
        return DomainDescriptor::from_json(&text)
            .or_else(|descriptor_err| {
                LatticeDomain::from_json(&text)
                    .map(DomainDescriptor::lattice)
                    .map_err(|_| descriptor_err)
            })
            .map_err(|e| parse_error(format!("domain file {spec}: {e}")));
    }
    let need = |value: Option<f64>, flag: &str| {
        value.ok_or_else(|| parse_error(format!("domain {spec} requires {flag}")))
    };
    Ok(match spec {
        "disc" => DomainDescriptor::disc(args.radius.unwrap_or(1.0))?,
        "rectangle" => DomainDescriptor::rectangle(need(args.a, "--a")?, need(args.b, "--b")?)?,
        "interval-union" => DomainDescriptor::interval_union(
            args.radii
                .clone()
                .ok_or_else(|| parse_error("domain interval-union requires --radii"))?,
        )?,
        "disc-union" => DomainDescriptor::disc_union_demo(
            args.n.unwrap_or(20),
            args.spacing.unwrap_or(2.0),
        )?,
        "honeycomb" => DomainDescriptor::honeycomb_perforated(
            args.radius.unwrap_or(1.0),
            need(args.eps, "--eps")?,
            args.variant.unwrap_or(VariantArg::Centers).into(),
        )?,
        other => {
            return Err(parse_error(format!(
                "unknown domain {other:?}; expected disc, rectangle, interval-union, \
                 disc-union, honeycomb or a JSON file path"
            )))
        }
    })
}

fn resolve_h(h: &str, domain: &DomainDescriptor) -> CliResult<f64> {
    if h == "auto" {
        return match domain {
            DomainDescriptor::HoneycombPerforated { eps, .. } => Ok(eps / 16.0),
            _ => Err(parse_error(
                "--h auto only applies to perforated (honeycomb) domains",
            )),
        };
    }
    let value: f64 = h
        .parse()
        .map_err(|_| parse_error(format!("invalid grid spacing {h:?}")))?;
    if !(value.is_finite() && value > 0.0) {
        return Err(parse_error(format!("grid spacing must be positive, got {h}")));
    }
    Ok(value)
}

fn print_report(report: &distance::EfficiencyReport) -> CliResult<()> {
    let mut value = serde_json::to_value(report).map_err(CoreError::from)?;
    round_floats(&mut value);
    println!(
        "{}",
        serde_json::to_string_pretty(&value).map_err(CoreError::from)?
    );
    Ok(())
}

fn cmd_phi(args: PhiArgs) -> CliResult<()> {
    let domain = build_domain(&args.domain)?;
    let h = if domain.is_one_dimensional() {
        1.0
    } else {
        resolve_h(&args.h, &domain)?
    };
    let report = phi_infinity(&domain, h)?;
    print_report(&report)
}

fn lattice_of(args: &DomainArgs) -> CliResult<LatticeDomain> {
    let domain = build_domain(args)?;
    if let DomainDescriptor::Lattice(q) = domain {
        return Ok(q);
    }
    let eps = args
        .eps
        .ok_or_else(|| parse_error("non-lattice domains require --eps to approximate"))?;
    Ok(domain.approximate_lattice(eps)?)
}

fn cmd_phi_d(args: PhiDArgs) -> CliResult<()> {
    let q = lattice_of(&args.domain)?;
    let report = distance::phi_d_infinity(&q)?;
    print_report(&report)
}

fn cmd_torsion(args: TorsionArgs) -> CliResult<()> {
    let domain = build_domain(&args.domain)?;
    if let DomainDescriptor::IntervalUnion1d { radii } = &domain {
        let h = resolve_h(&args.h, &domain)?;
        let mut value = serde_json::json!({
            "kind": "interval_union_1d",
            "p": args.p,
            "phi_p": phi_p_1d(radii, args.p)?,
            "phi_p_grid": phi_p_1d_grid(radii, args.p, h)?,
        });
        round_floats(&mut value);
        println!(
            "{}",
            serde_json::to_string_pretty(&value).map_err(CoreError::from)?
        );
        return Ok(());
    }
    let h = resolve_h(&args.h, &domain)?;
    let mask = domain.rasterize(h)?;
    let mut config = SolverConfig::new(args.p, h)?;
    if let Some(max_iterations) = args.max_iterations {
        config.max_iterations = max_iterations;
    }
    if let Some(tolerance) = args.tolerance {
        config.tolerance = tolerance;
    }
    config.validate()?;
    let field = solve_torsion(&mask, &config)?;
    let mut value = serde_json::json!({
        "p": args.p,
        "h": h,
        "iterations": field.iterations(),
        "energy": field.energy_value(),
        "residual": field.residual(),
        "max": field.field().max()?,
        "mean": field.field().mean()?,
        "phi_p": phi_p(&field)?,
        "psi_p": psi_p(&field)?,
    });
    round_floats(&mut value);
    println!(
        "{}",
        serde_json::to_string_pretty(&value).map_err(CoreError::from)?
    );
    if let Some(out) = &args.out {
        std::fs::write(out, field.to_json()?)?;
        let mut parameters = BTreeMap::new();
        parameters.insert("domain".into(), args.domain.domain.clone());
        parameters.insert("p".into(), sig12(args.p));
        parameters.insert("h".into(), sig12(h));
        write_manifest("torsion", parameters, std::slice::from_ref(out))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    parameters: BTreeMap<String, String>,
    outputs: Vec<String>,
    /// Seconds since the Unix epoch.
    timestamp: u64,
    tool_version: String,
}

fn write_manifest(
    command: &str,
    parameters: BTreeMap<String, String>,
    outputs: &[PathBuf],
) -> CliResult<()> {
    let Some(first) = outputs.first() else {
        return Ok(());
    };
    let manifest = RunManifest {
        command: command.to_string(),
        parameters,
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        timestamp: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let path = PathBuf::from(format!("{}.manifest.json", first.display()));
    let text = serde_json::to_string_pretty(&manifest).map_err(CoreError::from)?;
    std::fs::write(&path, &text)?;
    println!("{text}");
    Ok(())
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    writer.flush()?;
    Ok(())
}

const TORSION_ROW_HEADER: [&str; 6] = ["param", "phi", "psi", "Tp", "lambda_upper", "Fp"];

fn torsion_row(param: String, mask: &GridMask, config: &SolverConfig) -> CliResult<Vec<String>> {
    let field = solve_torsion(mask, config)?;
    let f = shape_functionals(&field, mask.masked_area())?;
    Ok(vec![
        param,
        sig12(f.phi_p),
        sig12(f.psi_p),
        sig12(f.t_p),
        sig12(f.lambda_p_upper),
        sig12(f.f_p),
    ])
}

fn join_sig12(values: &[f64]) -> String {
    values.iter().map(|&v| sig12(v)).collect::<Vec<_>>().join(",")
}

fn cmd_sweep(args: SweepArgs) -> CliResult<()> {
    match args.kind {
        SweepKind::Honeycomb {
            radius,
            mut eps,
            h,
            variant,
            out,
        } => {
            eps.sort_by(|a, b| b.total_cmp(a));
            eps.dedup();
            let limit = energy::equilateral_energy();
            let rows: Vec<Vec<String>> = eps
                .par_iter()
                .map(|&e| {
                    let h_row = if h == "auto" {
                        e / 16.0
                    } else {
                        h.parse::<f64>()
                            .map_err(|_| parse_error(format!("invalid grid spacing {h:?}")))?
                    };
                    let report =
                        distance::honeycomb_phi_infinity(radius, e, variant.into(), h_row)?;
                    Ok(vec![
                        sig12(e),
                        sig12(h_row),
                        sig12(report.ratio),
                        sig12(report.ratio - limit),
                    ])
                })
                .collect::<CliResult<_>>()?;
            write_csv(&out, &["eps", "h", "ratio", "limit_gap"], &rows)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("R".into(), sig12(radius));
            parameters.insert("eps".into(), join_sig12(&eps));
            parameters.insert("h".into(), h.clone());
            parameters.insert("variant".into(), HexRemoval::from(variant).to_string());
            write_manifest("sweep honeycomb", parameters, std::slice::from_ref(&out))
        }
        SweepKind::Perforated { mut s, p, h, out } => {
            s.sort_by(|a, b| b.total_cmp(a));
            s.dedup();
            let config = SolverConfig {
                max_iterations: 200_000,
                ..SolverConfig::new(p, h)?
            };
            let rows: Vec<Vec<String>> = s
                .par_iter()
                .map(|&spacing| {
                    let mask = perforated_disc_mask(spacing, h)?;
                    torsion_row(sig12(spacing), &mask, &config)
                })
                .collect::<CliResult<_>>()?;
            write_csv(&out, &TORSION_ROW_HEADER, &rows)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("s".into(), join_sig12(&s));
            parameters.insert("p".into(), sig12(p));
            parameters.insert("h".into(), sig12(h));
            write_manifest("sweep perforated", parameters, std::slice::from_ref(&out))
        }
        SweepKind::EpsLattice {
            domain,
            mut eps_list,
            out,
        } => {
            let descriptor = build_domain(&domain)?;
            eps_list.sort_by(|a, b| b.total_cmp(a));
            eps_list.dedup();
            let finest = eps_list
                .last()
                .copied()
                .ok_or_else(|| parse_error("--eps-list needs at least one spacing"))?;
            let limit = phi_infinity(&descriptor, finest / 8.0)?.ratio;
            let rows: Vec<Vec<String>> = eps_list
                .par_iter()
                .map(|&e| {
                    let q = descriptor.approximate_lattice(e)?;
                    let report = distance::phi_d_infinity(&q)?;
                    Ok(vec![
                        sig12(e),
                        String::new(),
                        sig12(report.ratio),
                        sig12(report.ratio - limit),
                    ])
                })
                .collect::<CliResult<_>>()?;
            write_csv(&out, &["eps", "h", "ratio", "limit_gap"], &rows)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("domain".into(), domain.domain.clone());
            parameters.insert("eps".into(), join_sig12(&eps_list));
            write_manifest("sweep eps-lattice", parameters, std::slice::from_ref(&out))
        }
        SweepKind::DiscUnion {
            mut n,
            spacing,
            p,
            h,
            out,
        } => {
            n.sort_unstable();
            n.dedup();
            let config = SolverConfig::new(p, h)?;
            let rows: Vec<Vec<String>> = n
                .par_iter()
                .map(|&count| {
                    let descriptor = DomainDescriptor::disc_union_demo(count, spacing)?;
                    let mask = descriptor.rasterize(h)?;
                    torsion_row(count.to_string(), &mask, &config)
                })
                .collect::<CliResult<_>>()?;
            write_csv(&out, &TORSION_ROW_HEADER, &rows)?;
            let mut parameters = BTreeMap::new();
            parameters.insert(
                "n".into(),
                n.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
            );
            parameters.insert("spacing".into(), sig12(spacing));
            parameters.insert("p".into(), sig12(p));
            parameters.insert("h".into(), sig12(h));
            write_manifest("sweep disc-union", parameters, std::slice::from_ref(&out))
        }
    }
}

fn cmd_verify(args: VerifyArgs, seed: u64) -> ExitCode {
    println!("{}", constant_note());
    let config = SuiteConfig {
        fast: args.fast,
        seed,
    };
    let results = run_all(&config);
    let mut all_passed = true;
    for result in &results {
        println!("{}", result.line());
        all_passed &= result.passed;
    }
    if all_passed {
        println!("verify: all {} criteria passed", results.len());
        ExitCode::SUCCESS
    } else {
        let failed = results.iter().filter(|r| !r.passed).count();
        println!("verify: {failed} of {} criteria failed", results.len());
        ExitCode::FAILURE
    }
}
