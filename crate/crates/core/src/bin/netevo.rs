use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use netevo::graph::{clean_with, degree_stats, CleanConfig, ComponentFilter};
use netevo::io::{self, EdgeListRecord, NeFile, Network};
use netevo::knapsack::{KnapsackInstance, Solver};
use netevo::ne::{kp_to_ne, ne_to_kp, ReductionMode};
use netevo::netgen::{generate, randomize_signs_directions, GenSpec, Model};
use netevo::sim::{run_sweep, Averaging, SweepConfig};

#[derive(Parser)]
#[command(name = "netevo", version, about = "Network evolution as 0/1 knapsack")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Ba,
    Er,
    Scalefree,
    Complete,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Ba => Model::BarabasiAlbert,
            ModelArg::Er => Model::ErdosRenyi,
            ModelArg::Scalefree => Model::ScaleFree,
            ModelArg::Complete => Model::Complete,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Edgelist,
    Mitab,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    KpToNe,
    NeToKp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Paper,
    Corrected,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Dp,
    Brute,
    Greedy,
}

impl SolverArg {
    fn solver(self, weight_scale: f64) -> Solver {
        match self {
            SolverArg::Dp => Solver::Dp { weight_scale },
            SolverArg::Brute => Solver::Brute,
            SolverArg::Greedy => Solver::Greedy,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AveragingArg {
    Floor,
    Exact,
}

impl From<AveragingArg> for Averaging {
    fn from(a: AveragingArg) -> Self {
        match a {
            AveragingArg::Floor => Averaging::Floor,
            AveragingArg::Exact => Averaging::Exact,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic signed network
    Generate {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        nodes: usize,
        /// BA: m; ER: edge probability; scalefree: beta. Defaults per model.
        #[arg(long)]
        param: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Load an edge list or MITAB export, clean it, and write a network file
    Ingest {
        #[arg(long, value_enum)]
        format: InputFormat,
        #[arg(long = "in")]
        input: PathBuf,
        /// Drop weak components smaller than this; default keeps only the largest
        #[arg(long)]
        min_component_size: Option<usize>,
        /// Redraw every edge's direction and sign with fair coins
        #[arg(long)]
        randomize_signs: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Convert between knapsack JSON and NE instance JSON
    Reduce {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long, value_enum, default_value = "corrected")]
        mode: ModeArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve a knapsack JSON instance and print the solution as JSON
    SolveKp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "dp")]
        solver: SolverArg,
        #[arg(long, default_value_t = 1.0)]
        weight_scale: f64,
    },
    /// Run a pressure x tolerance sweep on a network file
    Simulate {
        #[arg(long)]
        network: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "5,10,50,500")]
        pressures: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "5,10,50,500")]
        tolerances: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        /// Network label in the CSV; defaults to the file stem
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_enum, default_value = "dp")]
        solver: SolverArg,
        #[arg(long, default_value_t = 1.0)]
        weight_scale: f64,
        /// Cell means: floor (integer, as in published tables) or exact
        #[arg(long, value_enum, default_value = "floor")]
        averaging: AveragingArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw the V/W bar chart at the highest pressure from a results CSV
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Run(netevo::Error),
}

impl From<netevo::Error> for Failure {
    fn from(e: netevo::Error) -> Self {
        Failure::Run(e)
    }
}

fn summary(g: &netevo::graph::SignedDigraph) -> String {
    format!(
        "{} nodes, {} edges, {:.2} neighbours per node",
        g.node_count(),
        g.edge_count(),
        degree_stats(g).avg_neighbors
    )
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Generate {
            model,
            nodes,
            param,
            seed,
            out,
        } => {
            let model = Model::from(model);
            let spec = GenSpec {
                model,
                n: nodes,
                model_param: param.unwrap_or(model.default_param()),
                seed,
            };
            let g = generate(&spec)?;
            eprintln!("{model}: {}", summary(&g));
            io::write_network(&Network::with_index_ids(g), &out)?;
        }
        Command::Ingest {
            format,
            input,
            min_component_size,
            randomize_signs,
            seed,
            out,
        } => {
            let records: Vec<EdgeListRecord> = match format {
                InputFormat::Edgelist => io::parse_edgelist(&input)?,
                InputFormat::Mitab => io::parse_mitab(&input)?
                    .iter()
                    .map(EdgeListRecord::from)
                    .collect(),
            };
            let raw = io::ids_to_graph(&records, false, seed);
            eprintln!("raw: {}", summary(&raw.graph));
            let cfg = CleanConfig {
                components: min_component_size
                    .map_or(ComponentFilter::Giant, ComponentFilter::MinSize),
                undirected_duplicates: format == InputFormat::Mitab,
            };
            let cleaned = clean_with(&raw.graph, &cfg);
            let mut net = raw.remapped(cleaned.graph, &cleaned.index_map);
            if randomize_signs {
                net.graph = randomize_signs_directions(&net.graph, seed);
            }
            eprintln!("cleaned: {}", summary(&net.graph));
            io::write_network(&net, &out)?;
        }
        Command::Reduce {
            direction,
            mode,
            input,
            out,
        } => match direction {
            Direction::KpToNe => {
                let kp: KnapsackInstance = io::read_json(&input)?;
                let mode = match mode {
                    ModeArg::Paper => ReductionMode::PaperFaithful,
                    ModeArg::Corrected => ReductionMode::Corrected,
                };
                let ne = kp_to_ne(&kp, mode)?;
                io::write_json(&NeFile::from(&ne), &out)?;
            }
            Direction::NeToKp => {
                let ne = io::read_json::<NeFile>(&input)?.into_instance()?;
                io::write_json(&ne_to_kp(&ne)?.knapsack, &out)?;
            }
        },
        Command::SolveKp {
            input,
            solver,
            weight_scale,
        } => {
            let kp: KnapsackInstance = io::read_json(&input)?;
            let sol = solver.solver(weight_scale).solve(&kp)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&sol).map_err(netevo::Error::from)?
            );
        }
        Command::Simulate {
            network,
            pressures,
            tolerances,
            rounds,
            seed,
            workers,
            name,
            solver,
            weight_scale,
            averaging,
            out,
        } => {
            let net = io::read_network(&network)?;
            let mut cfg = SweepConfig {
                pressures,
                tolerances,
                rounds,
                master_seed: seed,
                solver: solver.solver(weight_scale),
                averaging: averaging.into(),
                ..SweepConfig::default()
            };
            if let Some(w) = workers {
                cfg.worker_count = w;
            }
            let name = name.unwrap_or_else(|| io::network_name(&network));
            if name.contains(['\n', '\r']) {
                return Err(Failure::Usage("network name must be a single line".into()));
            }
            let result = run_sweep(&net.graph, &name, &cfg)?;
            for w in &result.warnings {
                eprintln!("warning: {w}");
            }
            let file = File::create(&out).map_err(netevo::Error::from)?;
            io::write_results_csv(std::slice::from_ref(&result), BufWriter::new(file))?;
        }
        Command::Report { input, out } => {
            let results = io::read_results_csv(&input)?;
            let fig = io::emit_figure(&results, &out)?;
            for w in &fig.warnings {
                eprintln!("warning: {w}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_data_error() { 2 } else { 3 })
        }
    }
}
