//! Seeded batch experiments and CSV output.
//!
//! A [`BenchConfig`] names a graph source, a backend and a vertex limit; each
//! seed generates one instance (random sources) and runs [`split_solve`] on
//! it. The per-call time model adds a fixed annealer cost per solver call to
//! the measured decomposition time.
//!
//! Config files are flat `key = value` lines; `#` starts a comment.
//!
//! ```text
//! name = fig4
//! source = gnp:500:0.2
//! solver = exact
//! vertex_limit = 45
//! seeds = 0..10
//! ```

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::chimera::{chimera_graph, contract_random_edges, ChimeraSpec};
use crate::graph::{gnp_random, hamming_graph, read_dimacs, Graph};
use crate::partition::{split_solve, Parts, SplitConfig};
use crate::solvers::{Backend, SolverConfig, SolverKind};
use crate::{Error, Result};

pub const DEFAULT_PER_CALL_TIME_S: f64 = 0.15;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    /// `gnp:N:P`
    Gnp { n: usize, p: f64 },
    /// `gnp-degree:N:D`, edge probability `D / (N - 1)`.
    GnpDegree { n: usize, degree: f64 },
    /// `dimacs:PATH`
    Dimacs(PathBuf),
    /// `chimera:M:N:L`
    Chimera { rows: usize, cols: usize, shore: usize },
    /// `cm:M:N:L:CONTRACTIONS`
    Contracted {
        rows: usize,
        cols: usize,
        shore: usize,
        contractions: usize,
    },
    /// `hamming:BITS:DISTANCE`
    Hamming { bits: u32, distance: u32 },
}

impl GraphSource {
    /// Builds the instance for `seed`; deterministic sources ignore it.
    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match self {
            GraphSource::Gnp { n, p } => gnp_random(*n, *p, seed),
            GraphSource::GnpDegree { n, degree } => {
                let p = if *n < 2 { 0.0 } else { degree / (*n - 1) as f64 };
                gnp_random(*n, p, seed)
            }
            GraphSource::Dimacs(path) => {
                let file = std::fs::File::open(path)?;
                read_dimacs(std::io::BufReader::new(file))
            }
            GraphSource::Chimera { rows, cols, shore } => {
                chimera_graph(ChimeraSpec::new(*rows, *cols, *shore)?)
            }
            GraphSource::Contracted {
                rows,
                cols,
                shore,
                contractions,
            } => {
                let g = chimera_graph(ChimeraSpec::new(*rows, *cols, *shore)?)?;
                Ok(contract_random_edges(&g, *contractions, seed)?.0)
            }
            GraphSource::Hamming { bits, distance } => hamming_graph(*bits, *distance),
        }
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::Gnp { n, p } => write!(f, "gnp:{n}:{p}"),
            GraphSource::GnpDegree { n, degree } => write!(f, "gnp-degree:{n}:{degree}"),
            GraphSource::Dimacs(path) => write!(f, "dimacs:{}", path.display()),
            GraphSource::Chimera { rows, cols, shore } => write!(f, "chimera:{rows}:{cols}:{shore}"),
            GraphSource::Contracted {
                rows,
                cols,
                shore,
                contractions,
            } => write!(f, "cm:{rows}:{cols}:{shore}:{contractions}"),
            GraphSource::Hamming { bits, distance } => write!(f, "hamming:{bits}:{distance}"),
        }
    }
}

fn parse_field<T: FromStr>(field: &str, what: &str) -> Result<T> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("invalid {what}: {field:?}")))
}

impl FromStr for GraphSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(path) = s.strip_prefix("dimacs:") {
            return Ok(GraphSource::Dimacs(PathBuf::from(path)));
        }
        let parts: Vec<&str> = s.split(':').collect();
        let arity = |k: usize| -> Result<()> {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "graph source {s:?} needs {k} parameters"
                )))
            }
        };
        match parts[0] {
            "gnp" => {
                arity(2)?;
                Ok(GraphSource::Gnp {
                    n: parse_field(parts[1], "vertex count")?,
                    p: parse_field(parts[2], "edge probability")?,
                })
            }
            "gnp-degree" => {
                arity(2)?;
                Ok(GraphSource::GnpDegree {
                    n: parse_field(parts[1], "vertex count")?,
                    degree: parse_field(parts[2], "average degree")?,
                })
            }
            "chimera" => {
                arity(3)?;
                Ok(GraphSource::Chimera {
                    rows: parse_field(parts[1], "rows")?,
                    cols: parse_field(parts[2], "columns")?,
                    shore: parse_field(parts[3], "shore size")?,
                })
            }
            "cm" => {
                arity(4)?;
                Ok(GraphSource::Contracted {
                    rows: parse_field(parts[1], "rows")?,
                    cols: parse_field(parts[2], "columns")?,
                    shore: parse_field(parts[3], "shore size")?,
                    contractions: parse_field(parts[4], "contraction count")?,
                })
            }
            "hamming" => {
                arity(2)?;
                Ok(GraphSource::Hamming {
                    bits: parse_field(parts[1], "word length")?,
                    distance: parse_field(parts[2], "distance")?,
                })
            }
            other => Err(Error::InvalidArgument(format!("unknown graph source {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub name: String,
    pub source: GraphSource,
    pub solver: SolverKind,
    /// Solver budget (search nodes or annealing steps).
    pub budget: Option<u64>,
    pub vertex_limit: usize,
    pub seeds: Vec<u64>,
    pub repetitions: usize,
    pub per_call_time_model_s: f64,
    pub parts: Parts,
    /// Threads inside each decomposition.
    pub workers: Option<usize>,
    /// Run seeds concurrently.
    pub parallel_seeds: bool,
}

impl BenchConfig {
    pub fn new(name: impl Into<String>, source: GraphSource) -> Self {
        BenchConfig {
            name: name.into(),
            source,
            solver: SolverKind::Exact,
            budget: None,
            vertex_limit: 45,
            seeds: vec![0],
            repetitions: 1,
            per_call_time_model_s: DEFAULT_PER_CALL_TIME_S,
            parts: Parts::Auto,
            workers: None,
            parallel_seeds: false,
        }
    }

    /// Parses a config file; `source` is required.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected `key = value`, got {line:?}"),
            })?;
            pairs.push((i + 1, key.trim(), value.trim()));
        }
        let source = pairs
            .iter()
            .find(|(_, k, _)| *k == "source")
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: "missing `source`".into(),
            })?
            .2
            .parse()?;
        let mut cfg = BenchConfig::new("experiment", source);
        for (line, key, value) in pairs {
            cfg.set(key, value).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one field from its config-file spelling.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "name" => self.name = value.to_string(),
            "source" => self.source = value.parse()?,
            "solver" => self.solver = value.parse()?,
            "budget" => self.budget = Some(parse_field(value, "budget")?),
            "vertex_limit" => self.vertex_limit = parse_field(value, "vertex limit")?,
            "seeds" => self.seeds = parse_seeds(value)?,
            "repetitions" => self.repetitions = parse_field(value, "repetitions")?,
            "per_call_time_model_s" => {
                self.per_call_time_model_s = parse_field(value, "per-call time")?
            }
            "parts" => self.parts = parse_parts(value)?,
            "workers" => self.workers = Some(parse_field(value, "worker count")?),
            "parallel_seeds" => self.parallel_seeds = parse_field(value, "parallel_seeds flag")?,
            other => return Err(Error::InvalidArgument(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::InvalidArgument("repetitions must be at least 1".into()));
        }
        if !(self.per_call_time_model_s >= 0.0 && self.per_call_time_model_s.is_finite()) {
            return Err(Error::InvalidArgument(
                "per_call_time_model_s must be a non-negative number".into(),
            ));
        }
        if self.vertex_limit == 0 {
            return Err(Error::InvalidArgument("vertex_limit must be at least 1".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidArgument("at least one seed is required".into()));
        }
        Ok(())
    }
}

/// `auto` or a part count.
pub fn parse_parts(value: &str) -> Result<Parts> {
    if value.trim() == "auto" {
        Ok(Parts::Auto)
    } else {
        Ok(Parts::Fixed(parse_field(value, "part count")?))
    }
}

/// Comma-separated seeds or a half-open range `A..B`.
pub fn parse_seeds(value: &str) -> Result<Vec<u64>> {
    if let Some((a, b)) = value.split_once("..") {
        let (a, b): (u64, u64) = (parse_field(a, "seed")?, parse_field(b, "seed")?);
        return Ok((a..b).collect());
    }
    value.split(',').map(|s| parse_field(s, "seed")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Run,
    Median,
}

impl fmt::Display for RowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowKind::Run => "run",
            RowKind::Median => "median",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub experiment: String,
    pub row_kind: RowKind,
    pub source: String,
    pub solver: String,
    pub vertex_limit: usize,
    /// `None` on summary rows.
    pub seed: Option<u64>,
    pub repetition: Option<usize>,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub clique_size: usize,
    pub solver_calls: u64,
    pub per_call_time_model_s: f64,
    pub wall_split_time_s: f64,
    /// `wall_split_time_s + per_call_time_model_s * solver_calls`.
    pub wall_modeled_total_s: f64,
}

pub const CSV_HEADER: [&str; 14] = [
    "experiment",
    "row_kind",
    "source",
    "solver",
    "vertex_limit",
    "seed",
    "repetition",
    "n",
    "m",
    "clique_size",
    "solver_calls",
    "per_call_time_model_s",
    "wall_split_time_s",
    "wall_modeled_total_s",
];

/// Columns holding measured times; they differ between identical runs.
pub const WALL_COLUMNS: [&str; 2] = ["wall_split_time_s", "wall_modeled_total_s"];

pub fn modeled_total(split_time_s: f64, per_call_time_model_s: f64, solver_calls: u64) -> f64 {
    split_time_s + per_call_time_model_s * solver_calls as f64
}

/// Runs every (seed, repetition) pair, then appends the median row.
pub fn run_experiment(cfg: &BenchConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let jobs: Vec<(u64, usize)> = cfg
        .seeds
        .iter()
        .flat_map(|&s| (0..cfg.repetitions).map(move |r| (s, r)))
        .collect();
    let mut records: Vec<RunRecord> = if cfg.parallel_seeds {
        jobs.par_iter().map(|&(s, r)| run_one(cfg, s, r)).collect::<Result<_>>()?
    } else {
        jobs.iter().map(|&(s, r)| run_one(cfg, s, r)).collect::<Result<_>>()?
    };
    if let Some(median) = summarize(&records) {
        records.push(median);
    }
    Ok(records)
}

fn run_one(cfg: &BenchConfig, seed: u64, repetition: usize) -> Result<RunRecord> {
    let g = cfg.source.generate(seed)?;
    let backend = Backend::new(
        cfg.solver,
        SolverConfig {
            seed,
            budget: cfg.budget,
            ..SolverConfig::default()
        },
    );
    let split = SplitConfig {
        parts: cfg.parts,
        workers: cfg.workers,
        ..SplitConfig::new(cfg.vertex_limit, seed)
    };
    let start = Instant::now();
    let result = split_solve(&g, &split, &backend)?;
    let elapsed = start.elapsed().as_secs_f64();
    let calls = result.stats.subproblems_solved;
    Ok(RunRecord {
        experiment: cfg.name.clone(),
        row_kind: RowKind::Run,
        source: cfg.source.to_string(),
        solver: cfg.solver.to_string(),
        vertex_limit: cfg.vertex_limit,
        seed: Some(seed),
        repetition: Some(repetition),
        num_vertices: g.num_vertices(),
        num_edges: g.num_edges(),
        clique_size: result.size,
        solver_calls: calls,
        per_call_time_model_s: cfg.per_call_time_model_s,
        wall_split_time_s: elapsed,
        wall_modeled_total_s: modeled_total(elapsed, cfg.per_call_time_model_s, calls),
    })
}

/// Lower median for counts; midpoint median for times.
fn median_count<T: Copy + Ord>(mut xs: Vec<T>) -> T {
    xs.sort_unstable();
    xs[(xs.len() - 1) / 2]
}

fn median_real(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// Median row over the run rows of `records`, `None` when there are none.
pub fn summarize(records: &[RunRecord]) -> Option<RunRecord> {
    let runs: Vec<&RunRecord> = records.iter().filter(|r| r.row_kind == RowKind::Run).collect();
    let first = *runs.first()?;
    let calls = median_count(runs.iter().map(|r| r.solver_calls).collect());
    let split = median_real(runs.iter().map(|r| r.wall_split_time_s).collect());
    Some(RunRecord {
        row_kind: RowKind::Median,
        seed: None,
        repetition: None,
        num_vertices: median_count(runs.iter().map(|r| r.num_vertices).collect()),
        num_edges: median_count(runs.iter().map(|r| r.num_edges).collect()),
        clique_size: median_count(runs.iter().map(|r| r.clique_size).collect()),
        solver_calls: calls,
        wall_split_time_s: split,
        wall_modeled_total_s: modeled_total(split, first.per_call_time_model_s, calls),
        ..first.clone()
    })
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Header plus one row per record. Reals use the shortest representation
/// that parses back to the same value.
pub fn emit_csv<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for r in records {
        w.write_record([
            r.experiment.clone(),
            r.row_kind.to_string(),
            r.source.clone(),
            r.solver.clone(),
            r.vertex_limit.to_string(),
            opt(r.seed),
            opt(r.repetition),
            r.num_vertices.to_string(),
            r.num_edges.to_string(),
            r.clique_size.to_string(),
            r.solver_calls.to_string(),
            r.per_call_time_model_s.to_string(),
            r.wall_split_time_s.to_string(),
            r.wall_modeled_total_s.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(records: &[RunRecord]) -> Result<String> {
    let mut buf = Vec::new();
    emit_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidArgument(format!("CSV: {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_round_trips() {
        for s in [
            "gnp:500:0.3",
            "gnp-degree:3000:50",
            "dimacs:graphs/x.clq",
            "chimera:12:12:4",
            "cm:12:12:4:152",
            "hamming:6:2",
        ] {
            assert_eq!(s.parse::<GraphSource>().unwrap().to_string(), s);
        }
        assert!("gnp:5".parse::<GraphSource>().is_err());
        assert!("er:5:0.1".parse::<GraphSource>().is_err());
    }

    #[test]
    fn config_file() {
        let cfg = BenchConfig::from_text(
            "# fig 4\nname = fig4\nsource = gnp:60:0.2\nsolver = sa-clique\nseeds = 3..6\nparts = 2\n",
        )
        .unwrap();
        assert_eq!(cfg.name, "fig4");
        assert_eq!(cfg.solver, SolverKind::SaClique);
        assert_eq!(cfg.seeds, vec![3, 4, 5]);
        assert_eq!(cfg.parts, Parts::Fixed(2));
        assert_eq!(cfg.per_call_time_model_s, 0.15);
        assert!(matches!(
            BenchConfig::from_text("source = gnp:5:0.1\nrepetitions = 0\n"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            BenchConfig::from_text("source = gnp:5:0.1\ncolour = red\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(BenchConfig::from_text("name = x\n").is_err());
    }

    #[test]
    fn complete_graph_run() {
        let mut cfg = BenchConfig::new("k10", "gnp:10:1".parse().unwrap());
        cfg.seeds = vec![0, 1, 2];
        let records = run_experiment(&cfg).unwrap();
        assert_eq!(records.len(), 4);
        for r in &records {
            assert_eq!(r.clique_size, 10);
            assert_eq!(r.solver_calls, 1);
            assert_eq!(
                r.wall_modeled_total_s,
                r.wall_split_time_s + 0.15 * r.solver_calls as f64
            );
        }
        assert_eq!(records[3].row_kind, RowKind::Median);
    }

    #[test]
    fn empty_csv_is_header_only() {
        let text = csv_string(&[]).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("experiment,row_kind,"));
    }

    #[test]
    fn medians() {
        assert_eq!(median_count(vec![4, 1, 3, 2]), 2);
        assert_eq!(median_real(vec![4.0, 1.0, 3.0, 2.0]), 2.5);
    }
}
