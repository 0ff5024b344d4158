//! Command-line front end: sweeps, verification suites, single-circuit
//! estimates and graph-state reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use varent::circuit::CircuitSpec;
use varent::entanglement::entanglement_grid_oracle;
use varent::experiments::{
    graph_circuit_spec, run_estimate, run_sweep, run_verify, OutputFormat, Suite, SweepConfig,
    DEFAULT_VERIFY_SEED,
};
use varent::graphs::{graph_to_circuit, verify_degree_formula, Graph};
use varent::measurement::DEFAULT_SHOTS;
use varent::Error;

#[derive(Parser)]
#[command(
    name = "varent",
    version,
    about = "Single-qubit entanglement in RY/controlled-phase circuits"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Shots per measurement axis.
    #[arg(long, global = true)]
    shots: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Register size override for sweep presets.
    #[arg(long, global = true)]
    qubits: Option<usize>,
    /// Bloch-sphere grid resolution for the brute-force oracle.
    #[arg(long, global = true)]
    resolution: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter sweep from a preset or a JSON config.
    Sweep {
        /// fig5a, fig5b, fig5c, fig6a or fig6b.
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        preset: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Skip shot sampling and report exact values only.
        #[arg(long)]
        exact_only: bool,
    },
    /// Run a verification suite: oracle-equivalence, graph-formula, locality, shot-scaling.
    Verify { suite: String },
    /// Exact and sampled entanglement of one qubit of a JSON circuit.
    Estimate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        qubit: usize,
    },
    /// Degree-formula report for a graph state given as an edge list.
    Graph {
        #[arg(long)]
        edges: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, allow_negative_numbers = true)]
        phi: f64,
        /// Also write the lowered circuit as a JSON circuit description.
        #[arg(long)]
        circuit_out: Option<PathBuf>,
    },
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Verification(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = cli.common;
    match cli.command {
        Command::Sweep {
            preset,
            config,
            exact_only,
        } => {
            let mut cfg = match (preset, config) {
                (Some(name), _) => {
                    let mut cfg = SweepConfig::preset(&name)?;
                    cfg.shots = Some(DEFAULT_SHOTS);
                    cfg
                }
                (None, Some(path)) => SweepConfig::from_path(&path)?,
                (None, None) => unreachable!("clap enforces one source"),
            };
            if let Some(n) = common.qubits {
                cfg.n_qubits = n;
            }
            if let Some(shots) = common.shots {
                cfg.shots = Some(shots);
            }
            if exact_only {
                cfg.shots = None;
            }
            if let Some(seed) = common.seed {
                cfg.seed = seed;
            }
            if let Some(format) = common.format {
                cfg.format = format;
            }
            let output = common.output.or_else(|| cfg.output.take());
            let result = run_sweep(&cfg)?;
            emit(&result.render(cfg.format), output.as_ref())?;
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let report = run_verify(suite, common.seed.unwrap_or(DEFAULT_VERIFY_SEED))?;
            emit(&report.to_json(), common.output.as_ref())?;
            if !report.passed {
                return Err(Failure::Verification(format!(
                    "suite {} failed",
                    suite.name()
                )));
            }
        }
        Command::Estimate { circuit, qubit } => {
            let spec = CircuitSpec::from_path(&circuit)?;
            let report = run_estimate(
                &spec,
                qubit,
                common.shots.unwrap_or(DEFAULT_SHOTS),
                common.seed.unwrap_or(0),
                common.resolution,
            )?;
            emit(&report.to_json(), common.output.as_ref())?;
        }
        Command::Graph {
            edges,
            theta,
            phi,
            circuit_out,
        } => {
            let graph = Graph::from_path(&edges)?;
            let report = verify_degree_formula(&graph, theta, phi)?;
            let mut json = serde_json::to_value(&report).expect("report serializes");
            json["max_abs_difference"] = report.max_abs_difference().into();
            if let Some(res) = common.resolution {
                let state = graph_to_circuit(&graph, theta, phi)?.run()?;
                let grid = (0..graph.n_vertices())
                    .map(|v| entanglement_grid_oracle(&state, v, res).map(|e| e.value()))
                    .collect::<Result<Vec<_>, _>>()?;
                json["e_grid"] = grid.into();
            }
            if let Some(path) = circuit_out {
                let spec = graph_circuit_spec(&graph, theta, phi);
                std::fs::write(&path, spec.to_json())
                    .map_err(|source| Error::Io { path, source })?;
            }
            let text = serde_json::to_string_pretty(&json).expect("json renders");
            emit(&text, common.output.as_ref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(err)) => {
            eprintln!("error: {err}");
            match err {
                Error::Io { .. } => ExitCode::from(3),
                Error::Consistency(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
