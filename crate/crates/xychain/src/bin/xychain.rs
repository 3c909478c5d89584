//! Thin command-line front end over the library; every subcommand delegates
//! to [`xychain::cli`]. Exit codes: 0 success, 1 usage error, 2 numerical or
//! validation failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use xychain::chain::{Boundary, ChainSpec, Topology};
use xychain::cli::{
    run_analytic, run_curve, run_generator, run_sweep, run_validate, AnalyticConfig, CurveConfig,
    OutputFormat, SweepConfig,
};
use xychain::error::Error;
use xychain::fidelity;

#[derive(Parser)]
#[command(
    name = "xychain",
    about = "State transfer through dissipative XY qubit chains",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal average fidelity and output signature on a uniform time grid.
    Curve(CommonArgs),
    /// Maximum fidelity versus chain length, one row per (n, topology).
    Sweep(CommonArgs),
    /// Three-qubit closed forms: signature plus both fidelity columns.
    Analytic(CommonArgs),
    /// Run the validation suite and emit its JSON report.
    Validate(ValidateArgs),
    /// Dump the hop, dissipation, and generator matrices as JSON.
    Generator(CommonArgs),
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Chain length N.
    #[arg(long)]
    n: Option<usize>,
    /// Lengths for a sweep, comma separated (e.g. 3,4,5).
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    #[arg(long, value_enum)]
    boundary: Option<BoundaryArg>,
    #[arg(long, value_enum)]
    topology: Option<TopologyArg>,
    /// Coupling strength xi.
    #[arg(long)]
    xi: Option<f64>,
    /// Dissipation rate gamma.
    #[arg(long)]
    gamma: Option<f64>,
    /// End of the time window (default: 10/xi + 5/max(gamma, xi)).
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output path (default: standard output).
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON config file with the same keys; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Prefix the output with a comment echoing the configuration.
    #[arg(long, default_value_t = false)]
    meta: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// Largest chain length checked against the brute-force oracle.
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum BoundaryArg {
    Open,
    Closed,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum TopologyArg {
    Chained,
    Local,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Boundary {
        match b {
            BoundaryArg::Open => Boundary::Open,
            BoundaryArg::Closed => Boundary::Closed,
        }
    }
}

impl From<TopologyArg> for Topology {
    fn from(t: TopologyArg) -> Topology {
        match t {
            TopologyArg::Chained => Topology::Chained,
            TopologyArg::Local => Topology::Local,
        }
    }
}

/// Config-file counterpart of the flags.
#[derive(Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n: Option<usize>,
    n_list: Option<Vec<usize>>,
    boundary: Option<Boundary>,
    topology: Option<Topology>,
    xi: Option<f64>,
    gamma: Option<f64>,
    t_max: Option<f64>,
    grid: Option<usize>,
    format: Option<OutputFormat>,
    output: Option<PathBuf>,
}

/// Flags merged over the config file.
struct Resolved {
    n: Option<usize>,
    n_list: Option<Vec<usize>>,
    boundary: Option<Boundary>,
    topology: Option<Topology>,
    xi: f64,
    gamma: Option<f64>,
    t_max: Option<f64>,
    grid: Option<usize>,
    format: OutputFormat,
    output: Option<PathBuf>,
    meta: bool,
}

fn resolve(args: &CommonArgs) -> Result<Resolved, Error> {
    let file: ConfigFile = match &args.config {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?,
        None => ConfigFile::default(),
    };
    Ok(Resolved {
        n: args.n.or(file.n),
        n_list: args.n_list.clone().or(file.n_list),
        boundary: args.boundary.map(Boundary::from).or(file.boundary),
        topology: args.topology.map(Topology::from).or(file.topology),
        xi: args.xi.or(file.xi).unwrap_or(1.0),
        gamma: args.gamma.or(file.gamma),
        t_max: args.t_max.or(file.t_max),
        grid: args.grid.or(file.grid),
        format: args.format.or(file.format).unwrap_or_default(),
        output: args.output.clone().or(file.output),
        meta: args.meta,
    })
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::Usage(format!("missing required --{flag}")))
}

fn open_sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(fs::File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Curve(args) => {
            let r = resolve(&args)?;
            let spec = ChainSpec::new(
                required(r.n, "n")?,
                required(r.boundary, "boundary")?,
                required(r.topology, "topology")?,
                r.xi,
                required(r.gamma, "gamma")?,
            )?;
            let cfg = CurveConfig {
                t_max: r.t_max.unwrap_or_else(|| fidelity::default_t_max(&spec)),
                grid: r.grid.unwrap_or(fidelity::DEFAULT_GRID),
                format: r.format,
                meta: r.meta,
                spec,
            };
            run_curve(&cfg, &mut *open_sink(&r.output)?)
        }
        Command::Sweep(args) => {
            let r = resolve(&args)?;
            let n_list = match (r.n_list, r.n) {
                (Some(list), _) => list,
                (None, Some(n)) => vec![n],
                (None, None) => return Err(Error::Usage("missing required --n-list".into())),
            };
            let cfg = SweepConfig {
                n_list,
                boundary: required(r.boundary, "boundary")?,
                topology: r.topology,
                xi: r.xi,
                gamma: required(r.gamma, "gamma")?,
                t_max: r.t_max,
                grid: r.grid.unwrap_or(fidelity::DEFAULT_GRID),
                format: r.format,
                meta: r.meta,
            };
            run_sweep(&cfg, &mut *open_sink(&r.output)?)
        }
        Command::Analytic(args) => {
            let r = resolve(&args)?;
            let xi = r.xi;
            let gamma = required(r.gamma, "gamma")?;
            let cfg = AnalyticConfig {
                n: r.n.unwrap_or(3),
                boundary: required(r.boundary, "boundary")?,
                topology: required(r.topology, "topology")?,
                xi,
                gamma,
                t_max: r.t_max.unwrap_or(10.0 / xi.abs().max(1e-12) + 5.0 / gamma.max(xi.abs()).max(1e-12)),
                grid: r.grid.unwrap_or(fidelity::DEFAULT_GRID),
                format: r.format,
                meta: r.meta,
            };
            run_analytic(&cfg, &mut *open_sink(&r.output)?)
        }
        Command::Validate(args) => {
            let report = run_validate(args.max_n, &mut *open_sink(&args.output)?)?;
            if !report.passed {
                return Err(Error::InvariantViolation(
                    "validation gates failed; see report".into(),
                ));
            }
            Ok(())
        }
        Command::Generator(args) => {
            let r = resolve(&args)?;
            let spec = ChainSpec::new(
                required(r.n, "n")?,
                required(r.boundary, "boundary")?,
                required(r.topology, "topology")?,
                r.xi,
                required(r.gamma, "gamma")?,
            )?;
            run_generator(&spec, &mut *open_sink(&r.output)?)
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Usage(_)
        | Error::InvalidSpec(_)
        | Error::Domain(_)
        | Error::Unsupported(_)
        | Error::ResourceGuard(_)
        | Error::Config(_) => 1,
        Error::Numerical(_) | Error::InvariantViolation(_) | Error::Io(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
