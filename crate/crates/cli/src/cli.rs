//! Command-line front end.
//!
//! Exit codes: 0 success, 1 an invariant was violated, 2 bad input or
//! configuration, 64 the requested qubit count exceeds the cap.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use digraph_ed_core::digraph::generate;
use digraph_ed_core::entanglement::{
    alpha_sweep, build_plus_state, ed_all_vertices, theta_comparison, verify_graph_capped,
    DISCREPANCY_TOLERANCE,
};
use digraph_ed_core::{
    AntiparallelPolicy, DirectedGraph, EntanglementError, GateParams, GenParams, GraphError,
    GraphKind, StateError,
};
use thiserror::Error;

use crate::format::{self, g17};
use crate::graph_file::{self, GraphFileError};
use crate::suite::{run_suite, SuiteConfig};

pub const DEFAULT_MAX_QUBITS: usize = 20;
pub const MAX_QUBITS_ENV: &str = "DIGRAPH_ED_MAX_QUBITS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{m} qubits exceeds the cap of {cap} (raise with --max-qubits or {MAX_QUBITS_ENV})")]
    Capability { m: usize, cap: usize },
    #[error("invariant violated: {0}")]
    Violation(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Capability { .. } => 64,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GraphFileError> for CliError {
    fn from(e: GraphFileError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        match e {
            StateError::TooManyQubits { requested, cap } => {
                CliError::Capability { m: requested, cap }
            }
            StateError::NormDrift { .. } => CliError::Violation(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<EntanglementError> for CliError {
    fn from(e: EntanglementError) -> Self {
        match e {
            EntanglementError::State(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "digraph-ed",
    version,
    about = "Entanglement distance of directed graph states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph and write it as JSON.
    Gen(GenArgs),
    /// Print per-vertex and total entanglement distance of a graph state.
    Ed(GraphCommand),
    /// Compare statevector and closed-form ED and emit a report.
    Verify(GraphCommand),
    /// Tabulate statevector and closed-form ED over theta in [0, pi].
    SweepTheta(SweepThetaArgs),
    /// Sweep the initial qubit state on the single-edge graph.
    SweepAlpha(SweepAlphaArgs),
    /// Run the seeded verification battery.
    Suite(SuiteArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorArgs {
    /// path, cycle, star_out, star_in, complete_dag or erdos_renyi.
    #[arg(long)]
    pub kind: Option<String>,
    /// Number of vertices.
    #[arg(long = "M", value_name = "M")]
    pub m: Option<usize>,
    /// Edge probability for erdos_renyi.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct GraphSource {
    /// Graph JSON file; mutually exclusive with --kind.
    #[arg(long, conflicts_with = "kind")]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Admit graphs containing both (a, b) and (b, a); closed form is then skipped.
    #[arg(long)]
    pub allow_antiparallel: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CapArgs {
    #[arg(long, env = MAX_QUBITS_ENV, default_value_t = DEFAULT_MAX_QUBITS)]
    pub max_qubits: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct AngleArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub psi: f64,
    /// Read angles in degrees.
    #[arg(long)]
    pub deg: bool,
}

impl AngleArgs {
    fn to_rad(&self, x: f64) -> f64 {
        if self.deg {
            x.to_radians()
        } else {
            x
        }
    }

    fn theta_or(&self, default: f64) -> f64 {
        self.theta.map(|t| self.to_rad(t)).unwrap_or(default)
    }

    fn psi(&self) -> f64 {
        self.to_rad(self.psi)
    }

    fn gate(&self, default_theta: Option<f64>) -> Result<GateParams, CliError> {
        let theta = match (self.theta, default_theta) {
            (Some(t), _) => self.to_rad(t),
            (None, Some(d)) => d,
            (None, None) => return Err(CliError::Input("--theta is required".into())),
        };
        Ok(GateParams::new(theta, self.psi())?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GraphCommand {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub angles: AngleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub cap: CapArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepThetaArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub psi: f64,
    #[arg(long)]
    pub deg: bool,
    #[arg(long, default_value_t = 33)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub cap: CapArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepAlphaArgs {
    #[command(flatten)]
    pub angles: AngleArgs,
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub graphs: usize,
    #[arg(long = "max-M", value_name = "M", default_value_t = 12)]
    pub max_m: usize,
    /// Offset added to every closed-form value; used to check the suite can fail.
    #[arg(
        long,
        hide = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub inject_cf_perturbation: f64,
    #[command(flatten)]
    pub cap: CapArgs,
}

fn generate_from(args: &GeneratorArgs) -> Result<(DirectedGraph, String), CliError> {
    let kind: GraphKind = args
        .kind
        .as_deref()
        .ok_or_else(|| CliError::Input("--kind is required".into()))?
        .parse()?;
    let m = args
        .m
        .ok_or_else(|| CliError::Input("--M is required with --kind".into()))?;
    let g = generate(kind, m, &GenParams { p: args.p }, args.seed)?;
    let mut provenance = format!("generated kind={kind} M={m} seed={}", args.seed);
    if let Some(p) = args.p {
        provenance += &format!(" p={}", g17(p));
    }
    Ok((g, provenance))
}

fn load_graph(src: &GraphSource, cap: usize) -> Result<(DirectedGraph, String), CliError> {
    let policy = if src.allow_antiparallel {
        AntiparallelPolicy::Allow
    } else {
        AntiparallelPolicy::Reject
    };
    let (g, provenance) = match (&src.graph, &src.generator.kind) {
        (Some(path), _) => {
            let g = graph_file::parse_graph_file(path, policy)?;
            (g, format!("file {}", path.display()))
        }
        (None, Some(_)) => {
            if let Some(m) = src.generator.m {
                check_cap(m, cap)?;
            }
            generate_from(&src.generator)?
        }
        (None, None) => return Err(CliError::Input("supply --graph or --kind/--M".into())),
    };
    check_cap(g.num_vertices(), cap)?;
    Ok((g, provenance))
}

fn check_cap(m: usize, cap: usize) -> Result<(), CliError> {
    if m > cap {
        Err(CliError::Capability { m, cap })
    } else {
        Ok(())
    }
}

fn emit(out: &OutputArgs, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs one command, writing primary output to `--out` or `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Gen(args) => {
            let (g, _) = generate_from(&args.generator)?;
            if args.output.format == Some(Format::Csv) {
                return Err(CliError::Input("gen writes JSON only".into()));
            }
            emit(&args.output, &graph_file::graph_json(&g), stdout)
        }
        Command::Ed(args) => {
            let (g, _) = load_graph(&args.source, args.cap.max_qubits)?;
            let gp = args.angles.gate(None)?;
            let state = build_plus_state(&g, &gp, args.cap.max_qubits)?;
            let per_vertex = ed_all_vertices(&state);
            let total = per_vertex.iter().sum::<f64>() / per_vertex.len() as f64;
            let text = match args.output.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut s = String::from("vertex,out_degree,in_degree,E\n");
                    for (i, (e, d)) in per_vertex.iter().zip(g.degrees()).enumerate() {
                        s += &format!("{i},{},{},{}\n", d.out_degree, d.in_degree, g17(*e));
                    }
                    s += &format!("total,,,{}\n", g17(total));
                    s
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "per_vertex": per_vertex.iter().map(|&e| format::Num(e)).collect::<Vec<_>>(),
                        "total_sv": format::Num(total),
                    });
                    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
                }
            };
            emit(&args.output, &text, stdout)
        }
        Command::Verify(args) => {
            let (g, provenance) = load_graph(&args.source, args.cap.max_qubits)?;
            let gp = args.angles.gate(None)?;
            let mut report = verify_graph_capped(&g, &gp, args.cap.max_qubits)?;
            report.seed_info = provenance;
            eprintln!("{}", report.seed_info);
            let text = match args.output.format.unwrap_or(Format::Json) {
                Format::Json => format::report_json(&report),
                Format::Csv => format!(
                    "total_sv,total_cf,discrepancy\n{},{},{}\n",
                    g17(report.total_statevector),
                    report.total_closed_form.map(g17).unwrap_or_default(),
                    report.discrepancy.map(g17).unwrap_or_default()
                ),
            };
            emit(&args.output, &text, stdout)?;
            if !report.within_tolerance() {
                return Err(CliError::Violation(format!(
                    "|E_sv - E_cf| = {} >= {DISCREPANCY_TOLERANCE:e}",
                    g17(report.discrepancy.unwrap_or(f64::NAN))
                )));
            }
            Ok(())
        }
        Command::SweepTheta(args) => {
            let (g, _) = load_graph(&args.source, args.cap.max_qubits)?;
            let psi = if args.deg {
                args.psi.to_radians()
            } else {
                args.psi
            };
            let rows = theta_comparison(&g, psi, args.grid, args.cap.max_qubits)?;
            let text = match args.output.format.unwrap_or(Format::Csv) {
                Format::Csv => format::theta_csv(&rows),
                Format::Json => format::theta_json(&rows),
            };
            emit(&args.output, &text, stdout)?;
            if let Some(bad) = rows
                .iter()
                .find(|r| r.discrepancy.is_some_and(|d| d >= DISCREPANCY_TOLERANCE))
            {
                return Err(CliError::Violation(format!(
                    "discrepancy at theta = {}",
                    g17(bad.theta)
                )));
            }
            Ok(())
        }
        Command::SweepAlpha(args) => {
            let theta = args.angles.theta_or(std::f64::consts::FRAC_PI_2);
            let gp = GateParams::new(theta, args.angles.psi())?;
            let sweep = alpha_sweep(&gp, args.grid)?;
            if sweep.degenerate {
                eprintln!("note: E is flat over the sweep; extrema are degenerate");
            }
            let text = match args.output.format.unwrap_or(Format::Csv) {
                Format::Csv => format::alpha_csv(&sweep),
                Format::Json => format::alpha_json(&sweep),
            };
            emit(&args.output, &text, stdout)
        }
        Command::Suite(args) => {
            if args.max_m < 2 {
                return Err(CliError::Input("--max-M must be at least 2".into()));
            }
            check_cap(args.max_m, args.cap.max_qubits)?;
            let report = run_suite(&SuiteConfig {
                seed: args.seed,
                graphs: args.graphs,
                max_m: args.max_m,
                cf_perturbation: args.inject_cf_perturbation,
            });
            let mut text = String::new();
            for c in &report.checks {
                text += &format!("{c}\n");
            }
            stdout.write_all(text.as_bytes())?;
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name)
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Violation(failed.join(", ")))
            }
        }
    }
}
