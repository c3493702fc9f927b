//! Command definitions and dispatch for the `qprop` binary.
//!
//! Exit codes: 0 on success (whatever the truth value), 1 when a built-in
//! check fails, 2 for usage and input errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use qprop_core::logic::represent;
use qprop_core::subspace::projector_of;
use qprop_core::valuation::{born_probability, membership};
use qprop_core::{MembershipMethod, Semantics, StateVector, Tolerance};

use crate::demo::{demo_spin32, DemoReport};
use crate::fixtures::{self, DEFAULT_DIR};
use crate::format::{parse_projector, parse_state, to_pretty, FormatError};
use crate::formula;
use crate::manifest::{self, ManifestError};
use crate::report::{membership_str, render, render_grid, OutputFormat, RunConfig, Table};
use crate::sampling::{sweep, write_csv, StatisticsJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Residual,
    Linsys,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Sv,
    Ql,
}

#[derive(Debug, Parser)]
#[command(
    name = "qprop",
    version,
    about = "True, false and gap valuations of quantum propositions"
)]
pub struct Cli {
    /// Relative singular-value cutoff for ranks.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_RANK_REL)]
    pub tol_rank: f64,
    /// Relative residual below which a vector counts as a member.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_RESIDUAL_REL)]
    pub tol_residual: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Residual)]
    pub method: MethodArg,
    #[arg(long, global = true, value_enum, default_value_t = SemanticsArg::Sv)]
    pub semantics: SemanticsArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value one proposition in one state.
    Valuate {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        projector: PathBuf,
    },
    /// Replay the spin-3/2 example with built-in checks.
    #[command(name = "demo-spin32")]
    DemoSpin32,
    /// Count range, kernel and gap outcomes of Haar-random states.
    Sample {
        /// Ambient dimensions; a comma-separated list runs a sweep.
        #[arg(long, short = 'n', value_delimiter = ',', required = true)]
        dim: Vec<usize>,
        /// Projector ranks, comma-separated.
        #[arg(long, short = 'r', value_delimiter = ',', default_value = "1")]
        rank: Vec<usize>,
        #[arg(long, short = 't', default_value_t = 1000)]
        trials: u64,
        /// Also write `dimension,rank,gap_fraction` rows to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evaluate a formula such as `Q & (P | !P)`.
    Logic {
        formula: String,
        #[arg(long)]
        state: PathBuf,
        /// JSON object mapping atom labels to projector files or inline projectors.
        #[arg(long)]
        atoms: PathBuf,
    },
    /// Fixture data.
    Fixtures {
        #[command(subcommand)]
        action: FixturesCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum FixturesCommand {
    /// Write the spin-3/2 fixtures as JSON.
    Export {
        #[arg(long, default_value = DEFAULT_DIR)]
        dir: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error("formula: {0}")]
    Formula(#[from] formula::ParseError),
    #[error(transparent)]
    Core(#[from] qprop_core::Error),
    #[error("output: {0}")]
    Output(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    CheckFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::CheckFailed => 1,
        }
    }
}

#[derive(Serialize)]
struct ValuationReport {
    state: String,
    proposition: String,
    semantics: &'static str,
    truth: &'static str,
    probability: f64,
    residual_range: f64,
    residual_kernel: f64,
    method: &'static str,
    membership: &'static str,
    config: RunConfig,
}

#[derive(Serialize)]
struct LogicReport {
    formula: String,
    state: String,
    semantics: &'static str,
    method: &'static str,
    truth: &'static str,
    subspace_dim: usize,
    ambient: usize,
    config: RunConfig,
}

#[derive(Serialize)]
struct SampleReport {
    runs: Vec<StatisticsJson>,
    config: RunConfig,
}

#[derive(Serialize)]
struct DemoOutput<'a> {
    #[serde(flatten)]
    report: &'a DemoReport,
    config: RunConfig,
}

#[derive(Serialize)]
struct ExportReport {
    dir: String,
    files: Vec<&'static str>,
    config: RunConfig,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn input<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

fn load_state(path: &Path) -> Result<StateVector, CliError> {
    input(path, parse_state(&read(path)?))
}

fn display_path(p: &Path) -> String {
    p.display().to_string()
}

/// Label of a loaded object, falling back to its file name.
fn name_of(label: Option<&str>, path: &Path) -> String {
    label
        .map(str::to_owned)
        .unwrap_or_else(|| display_path(path))
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    format: OutputFormat,
    value: &T,
    text: impl FnOnce() -> String,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => out.write_all(to_pretty(value).as_bytes())?,
        OutputFormat::Table => out.write_all(text().as_bytes())?,
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    let tol = Tolerance::new(cli.tol_rank, cli.tol_residual)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let format = match cli.format {
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Table => OutputFormat::Table,
    };
    let method = match cli.method {
        MethodArg::Residual => MembershipMethod::Residual,
        MethodArg::Linsys => MembershipMethod::LinearSystem,
    };
    let semantics = match cli.semantics {
        SemanticsArg::Sv => Semantics::Supervaluation,
        SemanticsArg::Ql => Semantics::QuantumLogicTotal,
    };
    let config = RunConfig::new(tol, cli.seed, format, method, semantics);

    match &cli.command {
        Command::Valuate { state, projector } => {
            let psi = load_state(state)?;
            let (p, p_label) = input(projector, parse_projector(&read(projector)?, &tol))?;
            let outcome = membership(&psi, &p, method, &tol)?;
            let report = ValuationReport {
                state: name_of(psi.label(), state),
                proposition: name_of(p_label.as_deref(), projector),
                semantics: semantics.code(),
                truth: outcome.truth(semantics).as_str(),
                probability: born_probability(&psi, &p)?,
                residual_range: outcome.residual_range,
                residual_kernel: outcome.residual_kernel,
                method: method.as_str(),
                membership: membership_str(outcome.membership),
                config: config
                    .with_input("state", display_path(state))
                    .with_input("projector", display_path(projector)),
            };
            emit(out, format, &report, || {
                render(&[
                    Table::new("valuation")
                        .row("state", &report.state)
                        .row("proposition", &report.proposition)
                        .row("semantics", report.semantics)
                        .row("truth", report.truth)
                        .row("probability", report.probability)
                        .row("residual_range", format!("{:.3e}", report.residual_range))
                        .row("residual_kernel", format!("{:.3e}", report.residual_kernel))
                        .row("membership", report.membership),
                    report.config.table(),
                ])
            })?;
            Ok(Status::Success)
        }
        Command::DemoSpin32 => {
            let report = demo_spin32(&tol)?;
            let wrapped = DemoOutput {
                report: &report,
                config,
            };
            emit(out, format, &wrapped, || {
                report.to_text(&wrapped.config.table())
            })?;
            Ok(if report.passed {
                Status::Success
            } else {
                Status::CheckFailed
            })
        }
        Command::Sample {
            dim,
            rank,
            trials,
            csv,
        } => {
            let stats = sweep(dim, rank, *trials, cli.seed, method, &tol)?;
            if let Some(path) = csv {
                let file = fs::File::create(path).map_err(|source| CliError::Read {
                    path: path.clone(),
                    source,
                })?;
                write_csv(file, &stats)?;
            }
            let report = SampleReport {
                runs: stats.iter().map(StatisticsJson::from).collect(),
                config: match csv {
                    Some(p) => config.with_input("csv", display_path(p)),
                    None => config,
                },
            };
            emit(out, format, &report, || {
                let rows: Vec<Vec<String>> = report
                    .runs
                    .iter()
                    .map(|r| {
                        vec![
                            r.dimension.to_string(),
                            r.projector_rank.to_string(),
                            r.trials.to_string(),
                            r.in_range.to_string(),
                            r.in_kernel.to_string(),
                            r.gap.to_string(),
                            format!("{:.4}", r.gap_fraction),
                        ]
                    })
                    .collect();
                let grid = render_grid(
                    "gap frequency",
                    &[
                        "n",
                        "rank",
                        "trials",
                        "range",
                        "kernel",
                        "gap",
                        "gap_fraction",
                    ],
                    &rows,
                );
                format!("{grid}\n{}", render(&[report.config.table()]))
            })?;
            Ok(Status::Success)
        }
        Command::Logic {
            formula: text,
            state,
            atoms,
        } => {
            let psi = load_state(state)?;
            let table = manifest::load(atoms, &tol)?;
            let f = formula::parse_formula(text, &table)?;
            let ambient = f.ambient_dim()?;
            let rep = represent(&f, &tol)?;
            let outcome = membership(&psi, &projector_of(&rep), method, &tol)?;
            let report = LogicReport {
                formula: f.to_string(),
                state: name_of(psi.label(), state),
                semantics: semantics.code(),
                method: method.as_str(),
                truth: outcome.truth(semantics).as_str(),
                subspace_dim: rep.dim(),
                ambient,
                config: config
                    .with_input("formula", text.clone())
                    .with_input("state", display_path(state))
                    .with_input("atoms", display_path(atoms)),
            };
            emit(out, format, &report, || {
                render(&[
                    Table::new("formula")
                        .row("formula", &report.formula)
                        .row("state", &report.state)
                        .row("semantics", report.semantics)
                        .row("truth", report.truth)
                        .row(
                            "subspace_dim",
                            format!("{} of {}", report.subspace_dim, report.ambient),
                        ),
                    report.config.table(),
                ])
            })?;
            Ok(Status::Success)
        }
        Command::Fixtures {
            action: FixturesCommand::Export { dir },
        } => {
            let files = fixtures::export(dir).map_err(|source| CliError::Read {
                path: dir.clone(),
                source,
            })?;
            let report = ExportReport {
                dir: display_path(dir),
                files,
                config: config.with_input("dir", display_path(dir)),
            };
            emit(out, format, &report, || {
                let mut t = Table::new("fixtures export").row("dir", &report.dir);
                for f in &report.files {
                    t.push("file", f);
                }
                render(&[t])
            })?;
            Ok(Status::Success)
        }
    }
}
