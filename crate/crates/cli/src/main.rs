use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use cliquesplit::bench::{self, BenchConfig};
use cliquesplit::chimera::{chimera_graph, clique_capacity, contract_random_edges, ChimeraSpec};
use cliquesplit::graph::{gnp_random, hamming_graph, read_dimacs, write_dimacs};
use cliquesplit::partition::{split_solve, SplitConfig};
use cliquesplit::qubo::mc_to_qubo;
use cliquesplit::reduce::{k_core, reduce_graph_with, ReduceOptions};
use cliquesplit::solvers::{solve_mc_detailed, Backend, DEFAULT_ALPHA};
use cliquesplit::{Error, Graph, PenaltyParams, SolverConfig};

/// Maximum clique through decomposition into solver-sized pieces.
#[derive(Parser)]
#[command(name = "cliquesplit", version)]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph in DIMACS format.
    #[command(subcommand)]
    Gen(Generator),
    /// Shrink a graph with the k-core or the lower-bound reduction.
    Reduce(ReduceArgs),
    /// Decompose and solve, printing one CSV row.
    Split(SplitArgs),
    /// Solve directly with one backend.
    Solve(SolveArgs),
    /// Print the maximum-clique QUBO of a graph.
    Qubo(QuboArgs),
    /// Largest complete graph embeddable on a Chimera chip of N qubits.
    Capacity {
        #[arg(long)]
        qubits: u64,
    },
    /// Run an experiment described by a config file.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum Generator {
    /// Erdős–Rényi G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Chimera graph C(rows, cols, shore).
    Chimera(ChimeraArgs),
    /// Chimera graph after random edge contractions.
    Cm {
        #[command(flatten)]
        chimera: ChimeraArgs,
        #[arg(long)]
        contractions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Binary words adjacent at Hamming distance at least `distance`.
    Hamming {
        #[arg(long)]
        bits: u32,
        #[arg(long)]
        distance: u32,
    },
}

#[derive(Args)]
struct ChimeraArgs {
    #[arg(long, default_value_t = 12)]
    rows: usize,
    #[arg(long, default_value_t = 12)]
    cols: usize,
    #[arg(long, default_value_t = 4)]
    shore: usize,
}

#[derive(Args)]
struct ReduceArgs {
    /// DIMACS file, `-` for standard input.
    file: PathBuf,
    /// Extract the k-core.
    #[arg(long, conflicts_with = "lower_bound", required_unless_present = "lower_bound")]
    k: Option<usize>,
    /// Keep only what can hold a clique larger than this.
    #[arg(long)]
    lower_bound: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Prune edges around every vertex, not one random vertex.
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value = "exact")]
    solver: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Search nodes (exact) or annealing steps (stochastic backends).
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = 100)]
    num_reads: usize,
}

impl SolverArgs {
    fn backend(&self) -> Result<Backend, Error> {
        let config = SolverConfig {
            seed: self.seed,
            budget: self.budget,
            alpha: self.alpha,
            num_reads: self.num_reads,
            ..SolverConfig::default()
        };
        config.validate()?;
        Ok(Backend::new(self.solver.parse()?, config))
    }
}

#[derive(Args)]
struct SplitArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 45)]
    vertex_limit: usize,
    /// Part count for CH-partitioning, or `auto`.
    #[arg(long, default_value = "auto")]
    parts: String,
    /// Worker threads.
    #[arg(long, value_name = "WORKERS")]
    parallel: Option<usize>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct QuboArgs {
    #[arg(long, value_name = "FILE")]
    from_graph: PathBuf,
    /// Reward per selected vertex.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Penalty per selected non-adjacent pair.
    #[arg(long, default_value_t = 2.0)]
    b: f64,
}

#[derive(Args)]
struct BenchArgs {
    config: PathBuf,
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    source: Option<String>,
    #[arg(long)]
    solver: Option<String>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    vertex_limit: Option<usize>,
    /// Single seed; replaces the configured list.
    #[arg(long, conflicts_with = "seeds")]
    seed: Option<u64>,
    /// Comma-separated list or `A..B`.
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    repetitions: Option<usize>,
    #[arg(long)]
    per_call_time_model_s: Option<f64>,
    #[arg(long)]
    parts: Option<String>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    parallel_seeds: bool,
}

impl BenchArgs {
    fn config(&self) -> Result<BenchConfig, Error> {
        let text = io::read_to_string(open(&self.config)?)?;
        let mut cfg = BenchConfig::from_text(&text)?;
        let overrides = [
            ("name", self.name.clone()),
            ("source", self.source.clone()),
            ("solver", self.solver.clone()),
            ("budget", self.budget.map(|b| b.to_string())),
            ("vertex_limit", self.vertex_limit.map(|v| v.to_string())),
            ("seeds", self.seed.map(|s| s.to_string()).or(self.seeds.clone())),
            ("repetitions", self.repetitions.map(|r| r.to_string())),
            ("per_call_time_model_s", self.per_call_time_model_s.map(|t| t.to_string())),
            ("parts", self.parts.clone()),
            ("workers", self.workers.map(|w| w.to_string())),
        ];
        for (key, value) in overrides {
            if let Some(value) = value {
                cfg.set(key, &value)?;
            }
        }
        if self.parallel_seeds {
            cfg.parallel_seeds = true;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    if path.as_os_str() == "-" {
        return read_dimacs(io::stdin().lock());
    }
    read_dimacs(open(path)?)
}

fn open(path: &Path) -> Result<Box<dyn BufRead>, Error> {
    let file = File::open(path).map_err(|e| {
        Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })?;
    Ok(Box::new(BufReader::new(file)))
}

fn graph_name(path: &Path) -> String {
    if path.as_os_str() == "-" {
        return "stdin".to_string();
    }
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn one_based(labels: &[usize]) -> String {
    labels
        .iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Error> {
    match cli.command {
        Command::Gen(generator) => {
            let g = match generator {
                Generator::Gnp { n, p, seed } => gnp_random(n, p, seed)?,
                Generator::Chimera(c) => chimera_graph(ChimeraSpec::new(c.rows, c.cols, c.shore)?)?,
                Generator::Cm {
                    chimera: c,
                    contractions,
                    seed,
                } => {
                    let g = chimera_graph(ChimeraSpec::new(c.rows, c.cols, c.shore)?)?;
                    contract_random_edges(&g, contractions, seed)?.0
                }
                Generator::Hamming { bits, distance } => hamming_graph(bits, distance)?,
            };
            out.write_all(write_dimacs(&g).as_bytes())?;
        }
        Command::Reduce(args) => {
            let g = read_graph(&args.file)?;
            let reduced = match (args.k, args.lower_bound) {
                (Some(k), _) => k_core(&g, k),
                (None, Some(bound)) => {
                    let mut rng = cliquesplit::rng_from_seed(args.seed);
                    let options = ReduceOptions {
                        exhaustive: args.exhaustive,
                    };
                    reduce_graph_with(&g, bound, &mut rng, options).graph
                }
                (None, None) => unreachable!("clap requires one of --k and --lower-bound"),
            };
            writeln!(
                out,
                "c removed_vertices {} removed_edges {}",
                g.num_vertices() - reduced.num_vertices(),
                g.num_edges() - reduced.num_edges()
            )?;
            writeln!(out, "c kept {}", one_based(reduced.labels()))?;
            out.write_all(write_dimacs(&reduced).as_bytes())?;
        }
        Command::Split(args) => {
            let g = read_graph(&args.file)?;
            let backend = args.solver.backend()?;
            let cfg = SplitConfig {
                parts: bench::parse_parts(&args.parts)?,
                workers: args.parallel,
                ..SplitConfig::new(args.vertex_limit, args.solver.seed)
            };
            let start = Instant::now();
            let result = split_solve(&g, &cfg, &backend)?;
            let elapsed = start.elapsed().as_secs_f64();
            writeln!(out, "graph,n,m,vertex_limit,solver_calls,clique_size,wall_time_s")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                graph_name(&args.file),
                g.num_vertices(),
                g.num_edges(),
                args.vertex_limit,
                result.stats.subproblems_solved,
                result.size,
                elapsed
            )?;
        }
        Command::Solve(args) => {
            let g = read_graph(&args.file)?;
            let backend = args.solver.backend()?;
            let start = Instant::now();
            let (result, energy) = solve_mc_detailed(&g, backend.kind, &backend.config)?;
            let elapsed = start.elapsed().as_secs_f64();
            writeln!(out, "solver {}", result.solver_name)?;
            writeln!(out, "size {}", result.size)?;
            writeln!(out, "vertices {}", one_based(&result.vertices))?;
            if let Some(e) = energy {
                writeln!(out, "energy {e}")?;
            }
            writeln!(out, "wall_time_s {elapsed}")?;
        }
        Command::Qubo(args) => {
            let g = read_graph(&args.from_graph)?;
            let q = mc_to_qubo(&g, PenaltyParams::new(args.a, args.b)?);
            out.write_all(q.to_text().as_bytes())?;
        }
        Command::Capacity { qubits } => writeln!(out, "{}", clique_capacity(qubits))?,
        Command::Bench(args) => {
            let cfg = args.config()?;
            let records = bench::run_experiment(&cfg)?;
            bench::emit_csv(&records, out)?;
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
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(Error::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_solver_failure() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
