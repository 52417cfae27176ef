use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sensornet::error::{Error, ErrorClass, Result};
use sensornet::gen::{generate, GenConfig};
use sensornet::graph::json::{design_to_json, instance_to_json, parse_design, parse_instance, PartitionDoc};
use sensornet::graph::{digraph_from_pattern, export_dot, export_weighted_dot, ProblemInstance};
use sensornet::pipeline::{self, DesignOptions, RootStrategy};
use sensornet::structural::{is_strongly_connected, is_structurally_full_rank};
use sensornet::verification::{verify_design_numeric, DEFAULT_TOLERANCE};

/// Cost-optimal sensing and networking design for distributed estimation.
///
/// Exit codes: 0 success, 1 invalid input or internal error, 2 infeasible
/// instance, 3 brute-force guard exceeded.
#[derive(Debug, Parser)]
#[command(name = "sensornet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// SCC decomposition and structural checks of an instance.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a sensing and networking design.
    Design {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        roots: RootArgs,
        /// Solve a directed network exactly by enumeration (small networks only).
        #[arg(long)]
        exact: bool,
    },
    /// Numerically verify a design on random realizations.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        design: PathBuf,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare heuristic designs against exhaustive optima.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        roots: RootArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generate a symmetric (undirected) candidate network.
        #[arg(long)]
        undirected: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the system digraph or the candidate network as Graphviz DOT.
    ExportDot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphKind::System)]
        graph: GraphKind,
    },
}

#[derive(Debug, Args)]
struct RootArgs {
    /// Use a single root (1-based) for the branching union.
    #[arg(long, conflicts_with = "all_roots")]
    root: Option<usize>,
    /// Try every root and keep the cheapest union (default).
    #[arg(long)]
    all_roots: bool,
}

impl RootArgs {
    fn strategy(&self, instance: &ProblemInstance) -> Result<RootStrategy> {
        match self.root {
            None => Ok(RootStrategy::AllRoots),
            Some(r) if r >= 1 && r <= instance.sensors() => Ok(RootStrategy::Root(r - 1)),
            Some(r) => Err(Error::Invalid {
                path: "--root".into(),
                message: format!("sensor {r} outside 1..={}", instance.sensors()),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphKind {
    System,
    Network,
}

#[derive(Serialize)]
struct AnalysisDoc {
    n: usize,
    m: usize,
    structurally_full_rank: bool,
    parent_count: usize,
    network_strongly_connected: bool,
    #[serde(flatten)]
    partition: PartitionDoc,
}

fn read_instance(path: &Path) -> Result<ProblemInstance> {
    parse_instance(&fs::read_to_string(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Analyze { input, out } => {
            let instance = read_instance(&input)?;
            let partition = pipeline::partition(&instance)?;
            let doc = AnalysisDoc {
                n: instance.states(),
                m: instance.sensors(),
                structurally_full_rank: is_structurally_full_rank(instance.system())?,
                parent_count: partition.parents().len(),
                network_strongly_connected: is_strongly_connected(&instance.network().topology()),
                partition: PartitionDoc::from_partition(&partition),
            };
            emit(out.as_deref(), &pretty(&doc))
        }
        Command::Design {
            input,
            out,
            roots,
            exact,
        } => {
            let instance = read_instance(&input)?;
            let options = DesignOptions {
                root: roots.strategy(&instance)?,
                exact,
            };
            let outcome = pipeline::design(&instance, options)?;
            emit(out.as_deref(), &design_to_json(&outcome.design))
        }
        Command::Verify {
            input,
            design,
            trials,
            seed,
            tol,
            out,
        } => {
            let instance = read_instance(&input)?;
            let design = parse_design(&fs::read_to_string(&design)?, &instance)?;
            let report = verify_design_numeric(&instance, &design, trials as usize, seed, tol)?;
            emit(out.as_deref(), &report.to_json())
        }
        Command::Oracle { input, roots, out } => {
            let instance = read_instance(&input)?;
            let options = DesignOptions {
                root: roots.strategy(&instance)?,
                exact: false,
            };
            let report = pipeline::oracle(&instance, options)?;
            emit(out.as_deref(), &report.to_json())
        }
        Command::Gen {
            n,
            m,
            density,
            seed,
            undirected,
            out,
        } => {
            let instance = generate(GenConfig {
                n,
                m,
                density,
                seed,
                undirected,
            })?;
            emit(out.as_deref(), &instance_to_json(&instance))
        }
        Command::ExportDot { input, out, graph } => {
            let instance = read_instance(&input)?;
            let text = match graph {
                GraphKind::System => {
                    let labels: Vec<String> = (1..=instance.states()).map(|i| format!("x{i}")).collect();
                    export_dot(&digraph_from_pattern(instance.system())?, Some(&labels))
                }
                GraphKind::Network => {
                    let labels: Vec<String> = (1..=instance.sensors()).map(|i| format!("y{i}")).collect();
                    export_weighted_dot(instance.network(), Some(&labels))
                }
            };
            emit(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let body = json!({"error": err.kind(), "message": err.to_string()});
            println!("{}", pretty(&body).trim_end());
            let code = match err.class() {
                ErrorClass::Infeasible => 2,
                ErrorClass::Guard => 3,
                ErrorClass::Invalid | ErrorClass::Internal => 1,
            };
            ExitCode::from(code)
        }
    }
}
