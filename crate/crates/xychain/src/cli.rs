//! Deterministic CSV/JSON emitters behind the `xychain` binary.
//!
//! Output is byte-identical across runs with identical flags: numbers are
//! printed in shortest round-trip form capped at 12 significant digits, rows
//! follow input order, and no timestamps ever enter a data file. Run
//! metadata is emitted only under an explicit `--meta` flag, as a leading
//! comment echoing the effective configuration.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::chain::{Boundary, ChainSpec, Topology};
use crate::dynamics::amplitude_grid;
use crate::error::{Error, Result};
use crate::fidelity::{self, signature_from_amplitude, OutputSignature};
use crate::reference;
use crate::validate::{self, Tolerances, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Shortest round-trip decimal representation capped at 12 significant
/// digits. Negative zero collapses to `0` so equal values stay byte-equal.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let shortest = format!("{x}");
    if significant_digits(&shortest) <= 12 {
        return shortest;
    }
    // round to 12 significant digits, then strip the padding
    let sci = format!("{x:.11e}");
    let (mantissa, exponent) = sci.split_once('e').expect("{:e} always carries an exponent");
    let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
    let rounded: f64 = format!("{mantissa}e{exponent}").parse().expect("valid float");
    format!("{rounded}")
}

fn significant_digits(s: &str) -> usize {
    s.chars()
        .filter(|c| c.is_ascii_digit())
        .skip_while(|&c| c == '0')
        .count()
}

/// Round a value to its 12-significant-digit representation, for JSON
/// payloads that must match the CSV precision.
fn rounded(x: f64) -> f64 {
    format_number(x).parse().expect("formatted floats parse back")
}

/// One sample of a fidelity curve.
#[derive(Debug, Clone, Serialize)]
pub struct CurveRow {
    pub t: f64,
    pub f_opt: f64,
    pub rho: f64,
    pub sigma_re: f64,
    pub sigma_im: f64,
}

#[derive(Debug, Clone)]
pub struct CurveConfig {
    pub spec: ChainSpec,
    pub t_max: f64,
    pub grid: usize,
    pub format: OutputFormat,
    pub meta: bool,
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < 2 {
        return Err(Error::Usage(format!("grid must be at least 2, got {grid}")));
    }
    Ok(())
}

fn meta_line(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "# {text}")?;
    Ok(())
}

/// Optimal average fidelity and output signature on a uniform time grid.
pub fn curve_rows(cfg: &CurveConfig) -> Result<Vec<CurveRow>> {
    check_grid(cfg.grid)?;
    if cfg.t_max <= 0.0 || cfg.t_max.is_nan() {
        return Err(Error::Usage(format!("t-max must be positive, got {}", cfg.t_max)));
    }
    let dt = cfg.t_max / (cfg.grid - 1) as f64;
    let amplitudes = amplitude_grid(&cfg.spec, dt, cfg.grid)?;
    let o = cfg.spec.output_index();
    amplitudes
        .iter()
        .enumerate()
        .map(|(k, psi)| {
            let sig = signature_from_amplitude(psi, o);
            let f = fidelity::optimal_average_fidelity(&sig)?;
            Ok(CurveRow {
                t: k as f64 * dt,
                f_opt: f,
                rho: sig.rho,
                sigma_re: sig.sigma.re,
                sigma_im: sig.sigma.im,
            })
        })
        .collect()
}

pub fn run_curve(cfg: &CurveConfig, out: &mut dyn Write) -> Result<()> {
    let rows = curve_rows(cfg)?;
    if cfg.meta {
        meta_line(
            out,
            &format!(
                "xychain curve --n {} --boundary {} --topology {} --xi {} --gamma {} --t-max {} --grid {}",
                cfg.spec.n_qubits,
                cfg.spec.boundary,
                cfg.spec.topology,
                format_number(cfg.spec.coupling),
                format_number(cfg.spec.rate),
                format_number(cfg.t_max),
                cfg.grid
            ),
        )?;
    }
    match cfg.format {
        OutputFormat::Csv => {
            writeln!(out, "t,F_opt,rho,sigma_re,sigma_im")?;
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    format_number(row.t),
                    format_number(row.f_opt),
                    format_number(row.rho),
                    format_number(row.sigma_re),
                    format_number(row.sigma_im)
                )?;
            }
        }
        OutputFormat::Json => {
            let rounded_rows: Vec<CurveRow> = rows
                .iter()
                .map(|r| CurveRow {
                    t: rounded(r.t),
                    f_opt: rounded(r.f_opt),
                    rho: rounded(r.rho),
                    sigma_re: rounded(r.sigma_re),
                    sigma_im: rounded(r.sigma_im),
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rounded_rows)
                .map_err(|e| Error::Config(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_list: Vec<usize>,
    pub boundary: Boundary,
    /// `None` sweeps both topologies per length.
    pub topology: Option<Topology>,
    pub xi: f64,
    pub gamma: f64,
    pub t_max: Option<f64>,
    pub grid: usize,
    pub format: OutputFormat,
    pub meta: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutRow {
    pub n: usize,
    pub boundary: String,
    pub topology: String,
    pub xi: f64,
    pub gamma: f64,
    pub t_star: f64,
    pub f_max: f64,
}

pub fn sweep_rows(cfg: &SweepConfig) -> Result<Vec<SweepOutRow>> {
    if cfg.n_list.is_empty() {
        return Err(Error::Usage("sweep needs a non-empty n-list".into()));
    }
    if cfg.grid < 100 {
        return Err(Error::Usage(format!("grid must be at least 100, got {}", cfg.grid)));
    }
    let topologies: Vec<Topology> = match cfg.topology {
        Some(t) => vec![t],
        None => vec![Topology::Chained, Topology::Local],
    };
    let mut specs = Vec::new();
    for &n in &cfg.n_list {
        for &topology in &topologies {
            specs.push(ChainSpec::new(n, cfg.boundary, topology, cfg.xi, cfg.gamma)?);
        }
    }
    fidelity::sweep(&specs, cfg.t_max, cfg.grid)
        .into_iter()
        .map(|row| {
            let row = row?;
            Ok(SweepOutRow {
                n: row.spec.n_qubits,
                boundary: row.spec.boundary.to_string(),
                topology: row.spec.topology.to_string(),
                xi: row.spec.coupling,
                gamma: row.spec.rate,
                t_star: row.t_star,
                f_max: row.f_max,
            })
        })
        .collect()
}

pub fn run_sweep(cfg: &SweepConfig, out: &mut dyn Write) -> Result<()> {
    let rows = sweep_rows(cfg)?;
    if cfg.meta {
        let topo = cfg
            .topology
            .map(|t| format!(" --topology {t}"))
            .unwrap_or_default();
        meta_line(
            out,
            &format!(
                "xychain sweep --n-list {} --boundary {}{} --xi {} --gamma {} --grid {}",
                cfg.n_list
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                cfg.boundary,
                topo,
                format_number(cfg.xi),
                format_number(cfg.gamma),
                cfg.grid
            ),
        )?;
    }
    match cfg.format {
        OutputFormat::Csv => {
            writeln!(out, "n,boundary,topology,xi,gamma,t_star,f_max")?;
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    row.n,
                    row.boundary,
                    row.topology,
                    format_number(row.xi),
                    format_number(row.gamma),
                    format_number(row.t_star),
                    format_number(row.f_max)
                )?;
            }
        }
        OutputFormat::Json => {
            let rounded_rows: Vec<SweepOutRow> = rows
                .iter()
                .map(|r| SweepOutRow {
                    t_star: rounded(r.t_star),
                    f_max: rounded(r.f_max),
                    xi: rounded(r.xi),
                    gamma: rounded(r.gamma),
                    ..r.clone()
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rounded_rows)
                .map_err(|e| Error::Config(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct AnalyticConfig {
    pub n: usize,
    pub boundary: Boundary,
    pub topology: Topology,
    pub xi: f64,
    pub gamma: f64,
    pub t_max: f64,
    pub grid: usize,
    pub format: OutputFormat,
    pub meta: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticRow {
    pub t: f64,
    pub rho: f64,
    pub sigma_re: f64,
    pub sigma_im: f64,
    pub f_closed_form: f64,
    pub f_pipeline: f64,
}

pub fn analytic_rows(cfg: &AnalyticConfig) -> Result<Vec<AnalyticRow>> {
    if cfg.n != 3 {
        return Err(Error::Usage(format!(
            "closed forms exist for n = 3 only, got n = {}",
            cfg.n
        )));
    }
    check_grid(cfg.grid)?;
    if cfg.t_max <= 0.0 || cfg.t_max.is_nan() {
        return Err(Error::Usage(format!("t-max must be positive, got {}", cfg.t_max)));
    }
    let dt = cfg.t_max / (cfg.grid - 1) as f64;
    (0..cfg.grid)
        .map(|k| {
            let t = k as f64 * dt;
            let (sig, f_closed): (OutputSignature, f64) = match (cfg.boundary, cfg.topology) {
                (Boundary::Open, Topology::Chained) => (
                    crate::analytic::open_chained_signature(t, cfg.xi, cfg.gamma)?,
                    reference::open_chained_fidelity_reference(t, cfg.xi, cfg.gamma)?,
                ),
                (Boundary::Open, Topology::Local) => (
                    crate::analytic::open_local_signature(t, cfg.xi, cfg.gamma),
                    crate::analytic::open_local_fidelity(t, cfg.xi, cfg.gamma),
                ),
                (Boundary::Closed, Topology::Chained) => (
                    crate::analytic::closed_chained_signature(t, cfg.xi, cfg.gamma),
                    reference::closed_chained_fidelity_reference(t, cfg.xi, cfg.gamma),
                ),
                (Boundary::Closed, Topology::Local) => (
                    crate::analytic::closed_local_signature(t, cfg.xi, cfg.gamma),
                    crate::analytic::closed_local_fidelity(t, cfg.xi, cfg.gamma),
                ),
            };
            let f_pipeline = fidelity::optimal_average_fidelity(&sig)?;
            Ok(AnalyticRow {
                t,
                rho: sig.rho,
                sigma_re: sig.sigma.re,
                sigma_im: sig.sigma.im,
                f_closed_form: f_closed,
                f_pipeline,
            })
        })
        .collect()
}

pub fn run_analytic(cfg: &AnalyticConfig, out: &mut dyn Write) -> Result<()> {
    let rows = analytic_rows(cfg)?;
    if cfg.meta {
        meta_line(
            out,
            &format!(
                "xychain analytic --n 3 --boundary {} --topology {} --xi {} --gamma {} --t-max {} --grid {}",
                cfg.boundary,
                cfg.topology,
                format_number(cfg.xi),
                format_number(cfg.gamma),
                format_number(cfg.t_max),
                cfg.grid
            ),
        )?;
    }
    match cfg.format {
        OutputFormat::Csv => {
            writeln!(out, "t,rho,sigma_re,sigma_im,f_closed_form,f_pipeline")?;
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    format_number(row.t),
                    format_number(row.rho),
                    format_number(row.sigma_re),
                    format_number(row.sigma_im),
                    format_number(row.f_closed_form),
                    format_number(row.f_pipeline)
                )?;
            }
        }
        OutputFormat::Json => {
            let rounded_rows: Vec<AnalyticRow> = rows
                .iter()
                .map(|r| AnalyticRow {
                    t: rounded(r.t),
                    rho: rounded(r.rho),
                    sigma_re: rounded(r.sigma_re),
                    sigma_im: rounded(r.sigma_im),
                    f_closed_form: rounded(r.f_closed_form),
                    f_pipeline: rounded(r.f_pipeline),
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rounded_rows)
                .map_err(|e| Error::Config(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Run the validation suite, write the JSON report, and return it so the
/// caller can set the exit code.
pub fn run_validate(max_n: usize, out: &mut dyn Write) -> Result<ValidationReport> {
    let report = validate::run_validation(max_n, Tolerances::default())?;
    serde_json::to_writer_pretty(&mut *out, &report).map_err(|e| Error::Config(e.to_string()))?;
    writeln!(out)?;
    Ok(report)
}

#[derive(Debug, Serialize)]
struct GeneratorDump {
    n: usize,
    boundary: String,
    topology: String,
    xi: f64,
    gamma: f64,
    n_bonds: usize,
    output_index: usize,
    hop: Vec<Vec<f64>>,
    dissipation: Vec<Vec<f64>>,
    generator_re: Vec<Vec<f64>>,
    generator_im: Vec<Vec<f64>>,
}

/// Dump `h`, `M`, and `G` with exact entries as JSON.
pub fn run_generator(spec: &ChainSpec, out: &mut dyn Write) -> Result<()> {
    let n = spec.n_qubits;
    let h = spec.hop_matrix();
    let m = spec.dissipation_matrix();
    let g = spec.effective_generator();
    let to_rows = |f: &dyn Fn(usize, usize) -> f64| -> Vec<Vec<f64>> {
        (0..n).map(|k| (0..n).map(|l| f(k, l)).collect()).collect()
    };
    let dump = GeneratorDump {
        n,
        boundary: spec.boundary.to_string(),
        topology: spec.topology.to_string(),
        xi: spec.coupling,
        gamma: spec.rate,
        n_bonds: spec.n_bonds(),
        output_index: spec.output_index(),
        hop: to_rows(&|k, l| h[[k, l]]),
        dissipation: to_rows(&|k, l| m[[k, l]]),
        generator_re: to_rows(&|k, l| g[[k, l]].re),
        generator_im: to_rows(&|k, l| g[[k, l]].im),
    };
    serde_json::to_writer_pretty(&mut *out, &dump).map_err(|e| Error::Config(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}
