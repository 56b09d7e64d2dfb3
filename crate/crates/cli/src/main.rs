//! `sasaki-lab`: verification suites, positivity certificates and parameter sweeps.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check or the
//! certification fails, 2 for invalid input.

mod config;
mod error;
mod json;
mod model;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use sasaki_core::exterior::multi_indices;
use sasaki_core::positivity::PositivityCertificate;

use config::{CheckName, Epsilon, ModelKind, ModifierChoice, OperatorName, RunConfig};
use error::{config as config_error, CliError, CliResult};
use model::{load, load_at, Loaded, ModelInfo};
use suites::{run_certificate, run_suite, summarize, PointSummary, SuiteResult};

const SCHEMA: &str = "1";
const THREADS_VAR: &str = "SASAKI_LAB_THREADS";

#[derive(Parser)]
#[command(name = "sasaki-lab", version, about = "Curvature of 3-(alpha,delta)-Sasaki models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report every residual.
    Verify(VerifyArgs),
    /// Certify strong positivity of the Riemannian curvature operator.
    Certify(CertifyArgs),
    /// Evaluate per-point verdicts over an (alpha, delta) grid.
    Sweep(SweepArgs),
    /// Write one curvature operator as a JSON matrix.
    ExportOperator(ExportArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Operator file for the hyper-Kähler-type part of the base curvature.
    #[arg(long)]
    r1: Option<PathBuf>,
    /// Structure constants for `--model custom_lie`.
    #[arg(long)]
    lie_data: Option<PathBuf>,
    /// Write JSON here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ModifierArgs {
    #[arg(long, value_enum)]
    modifier: Option<ModifierChoice>,
    /// Adapted 4-form for `--modifier custom`.
    #[arg(long)]
    modifier_form: Option<PathBuf>,
    /// A non-negative number or `auto`.
    #[arg(long)]
    epsilon: Option<Epsilon>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    modifier: ModifierArgs,
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Option<Vec<CheckName>>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    modifier: ModifierArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    alphas: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    deltas: Option<Vec<f64>>,
    /// Values of delta / alpha.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    ratios: Option<Vec<f64>>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum)]
    operator: Option<OperatorName>,
}

impl ModelArgs {
    fn into_config(self, extra: RunConfig) -> CliResult<RunConfig> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            model: self.model,
            n: self.n,
            alpha: self.alpha,
            delta: self.delta,
            r1: self.r1,
            lie_data: self.lie_data,
            output: self.output,
            ..extra
        };
        Ok(base.merged(flags))
    }
}

impl ModifierArgs {
    fn overlay(self, cfg: RunConfig) -> RunConfig {
        cfg.merged(RunConfig {
            modifier: self.modifier,
            modifier_form: self.modifier_form,
            epsilon: self.epsilon,
            ..Default::default()
        })
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    schema: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    model: &'a ModelInfo,
    passed: bool,
    suites: Vec<SuiteResult>,
    summary: PointSummary,
}

#[derive(Serialize)]
struct CertifyReport<'a> {
    schema: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    model: &'a ModelInfo,
    certified: bool,
    certificate: PositivityCertificate,
}

#[derive(Serialize)]
struct SweepReport<'a> {
    schema: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    points: Vec<PointSummary>,
}

#[derive(Serialize)]
struct ExportReport<'a> {
    schema: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    model: &'a ModelInfo,
    operator: OperatorName,
    dim: usize,
    basis: Vec<String>,
    matrix: Vec<Vec<f64>>,
}

/// What a command produced: its JSON, an optional table, and whether it passed.
struct Outcome {
    json: String,
    table: Option<String>,
    passed: bool,
}

fn verify(cfg: RunConfig) -> CliResult<Outcome> {
    let loaded = load(&cfg)?;
    let names = cfg.suites(loaded.lie.is_some())?;
    let suites = names
        .iter()
        .map(|name| run_suite(*name, &cfg, &loaded))
        .collect::<CliResult<Vec<_>>>()?;
    let passed = suites.iter().all(|s| s.passed);
    let report = VerifyReport {
        schema: SCHEMA,
        command: "verify",
        config: &cfg,
        model: &loaded.info,
        passed,
        suites,
        summary: summarize(&loaded.point, &loaded.suite),
    };
    Ok(Outcome {
        json: json::to_string(&report),
        table: None,
        passed,
    })
}

fn certify(cfg: RunConfig) -> CliResult<Outcome> {
    let loaded = load(&cfg)?;
    let certificate = run_certificate(&cfg, &loaded)?;
    let certified = certificate.certified();
    let report = CertifyReport {
        schema: SCHEMA,
        command: "certify",
        config: &cfg,
        model: &loaded.info,
        certified,
        certificate,
    };
    Ok(Outcome {
        json: json::to_string(&report),
        table: None,
        passed: certified,
    })
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(THREADS_VAR) {
        let threads: usize = value
            .parse()
            .ok()
            .filter(|t| *t > 0)
            .ok_or_else(|| config_error(format!("{THREADS_VAR} must be a positive integer, got {value:?}")))?;
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| config_error(format!("cannot start worker threads: {e}")))
}

fn sweep(cfg: RunConfig) -> CliResult<Outcome> {
    let grid = cfg.grid()?;
    let pool = thread_pool()?;
    let points = pool.install(|| {
        grid.par_iter()
            .map(|&(a, d)| load_at(&cfg, a, d).map(|l: Loaded| summarize(&l.point, &l.suite)))
            .collect::<CliResult<Vec<_>>>()
    })?;
    let table = sweep_table(&points);
    let report = SweepReport {
        schema: SCHEMA,
        command: "sweep",
        config: &cfg,
        points,
    };
    Ok(Outcome {
        json: json::to_string(&report),
        table: Some(table),
        passed: true,
    })
}

fn sweep_table(points: &[PointSummary]) -> String {
    let header = [
        "n", "alpha", "delta", "alpha*beta", "trace", "det", "gap", "all", "N_i min", "R min", "R>=0", "einstein",
    ];
    let yes = |b: bool| if b { "yes" } else { "no" }.to_string();
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|p| {
            vec![
                p.n.to_string(),
                format!("{:.6}", p.alpha),
                format!("{:.6}", p.delta),
                format!("{:.6}", p.alpha_beta),
                yes(p.conditions.trace_positive),
                yes(p.conditions.determinant_positive),
                yes(p.conditions.delta_gap_positive),
                yes(p.conditions.all),
                format!("{:.6e}", p.ni_min),
                format!("{:.6e}", p.canonical_min),
                yes(p.canonical_nonnegative),
                yes(p.einstein.is_einstein()),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = line(header.iter().map(|s| s.to_string()).collect());
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

fn basis_labels(dim: usize) -> Vec<String> {
    multi_indices(dim, 2)
        .iter()
        .map(|p| format!("e{}^e{}", p[0] + 1, p[1] + 1))
        .collect()
}

fn export(cfg: RunConfig) -> CliResult<Outcome> {
    let loaded = load(&cfg)?;
    let name = cfg.operator.unwrap_or(OperatorName::Riemannian);
    let s = &loaded.suite;
    let op = match name {
        OperatorName::Canonical => &s.canonical,
        OperatorName::Riemannian => &s.riemannian,
        OperatorName::Base => &s.base,
        OperatorName::RPar => &s.r_par,
        OperatorName::RPerp => &s.r_perp,
        OperatorName::R1 => &s.r1,
        OperatorName::Gram => &s.torsion.gram,
        OperatorName::Sigma => &s.torsion.sigma_operator,
    };
    let file = model::OperatorFile::from_op(op);
    let report = ExportReport {
        schema: SCHEMA,
        command: "export-operator",
        config: &cfg,
        model: &loaded.info,
        operator: name,
        dim: file.dim,
        basis: basis_labels(file.dim),
        matrix: file.matrix,
    };
    Ok(Outcome {
        json: json::to_string(&report),
        table: None,
        passed: true,
    })
}

fn run(cli: Cli) -> CliResult<(Outcome, Option<PathBuf>)> {
    let (cfg, command): (RunConfig, fn(RunConfig) -> CliResult<Outcome>) = match cli.command {
        Command::Verify(a) => {
            let extra = RunConfig {
                checks: a.checks,
                ..Default::default()
            };
            (a.modifier.overlay(a.model.into_config(extra)?), verify)
        }
        Command::Certify(a) => (a.modifier.overlay(a.model.into_config(RunConfig::default())?), certify),
        Command::Sweep(a) => {
            let extra = RunConfig {
                alphas: a.alphas,
                deltas: a.deltas,
                ratios: a.ratios,
                ..Default::default()
            };
            (a.model.into_config(extra)?, sweep)
        }
        Command::ExportOperator(a) => {
            let extra = RunConfig {
                operator: a.operator,
                ..Default::default()
            };
            (a.model.into_config(extra)?, export)
        }
    };
    let output = cfg.output.clone();
    Ok((command(cfg)?, output))
}

fn emit(outcome: &Outcome, output: Option<&PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => {
            std::fs::write(path, &outcome.json).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            if let Some(table) = &outcome.table {
                print!("{table}");
            }
        }
        None => {
            print!("{}", outcome.json);
            if let Some(table) = &outcome.table {
                eprint!("{table}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let result = run(Cli::parse()).and_then(|(outcome, output)| {
        emit(&outcome, output.as_ref())?;
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("sasaki-lab: {e}");
            ExitCode::from(2)
        }
    }
}
