//! Subproblem solvers behind one interface.
//!
//! | name        | method                                                  |
//! |-------------|---------------------------------------------------------|
//! | `exact`     | branch and bound with a coloring bound                  |
//! | `sa-clique` | fixed-size annealing, binary search over the size       |
//! | `sa-qubo`   | single-flip annealing on the clique QUBO                |
//! | `descent`   | descent from random starts on the clique QUBO           |
//! | `sampler`   | mock annealer reads polished by descent                 |
//!
//! QUBO-based backends can return infeasible assignments; [`solve_mc`]
//! repairs those by dropping vertices until the selection is a clique.

mod descent;
mod exact;
mod sa_clique;
mod sa_qubo;
mod sampler;

pub use descent::{is_local_minimum, local_search_descent, DESCENT_NAME};
pub use exact::{exact_max_clique, EXACT_NAME};
pub use sa_clique::{sa_clique, SA_CLIQUE_NAME};
pub use sa_qubo::{sa_qubo, SA_QUBO_NAME};
pub use sampler::{sampler_solve, FixedSampler, MockAnnealer, SampleSet, Sampler, SAMPLER_NAME};

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::graph::{CliqueResult, Graph};
use crate::partition::{binary_search_max_clique, SubproblemSolver};
use crate::qubo::{assignment_to_clique, mc_to_qubo, BinaryAssignment, Decoded, PenaltyParams};
use crate::{derive_seed, rng_from_seed, Error, Result};

/// Annealing steps per run when no budget is given.
pub const DEFAULT_SA_STEPS: u64 = 100_000;

pub const DEFAULT_ALPHA: f64 = 0.9996;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub seed: u64,
    /// Search nodes for `exact` (unlimited when `None`), annealing steps
    /// per run for the stochastic backends.
    pub budget: Option<u64>,
    /// Geometric cooling factor, in `(0, 1)`.
    pub alpha: f64,
    /// Calibrated from probe moves when `None`.
    pub initial_temperature: Option<f64>,
    /// Reads for `sampler`, random starts for `descent`.
    pub num_reads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 0,
            budget: None,
            alpha: DEFAULT_ALPHA,
            initial_temperature: None,
            num_reads: 100,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if let Some(t) = self.initial_temperature {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "initial temperature must be positive, got {t}"
                )));
            }
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        SolverConfig { seed, ..self }
    }
}

/// Temperature at which an average uphill probe is accepted half the time.
pub(crate) fn initial_temperature(probe_deltas: &[f64]) -> f64 {
    let uphill: Vec<f64> = probe_deltas.iter().copied().filter(|&d| d > 0.0).collect();
    if uphill.is_empty() {
        return 1.0;
    }
    let mean = uphill.iter().sum::<f64>() / uphill.len() as f64;
    mean / std::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverKind {
    Exact,
    SaClique,
    SaQubo,
    Descent,
    Sampler,
}

impl SolverKind {
    pub const ALL: [SolverKind; 5] = [
        SolverKind::Exact,
        SolverKind::SaClique,
        SolverKind::SaQubo,
        SolverKind::Descent,
        SolverKind::Sampler,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Exact => EXACT_NAME,
            SolverKind::SaClique => SA_CLIQUE_NAME,
            SolverKind::SaQubo => SA_QUBO_NAME,
            SolverKind::Descent => DESCENT_NAME,
            SolverKind::Sampler => SAMPLER_NAME,
        }
    }

    pub fn is_qubo_based(self) -> bool {
        matches!(self, SolverKind::SaQubo | SolverKind::Descent | SolverKind::Sampler)
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownSolver(s.to_string()))
    }
}

/// Maximum clique of `g` with the named backend; the result always passes
/// [`CliqueResult::verify`] and only `exact` is guaranteed maximum.
pub fn solve_mc(g: &Graph, kind: SolverKind, cfg: &SolverConfig) -> Result<CliqueResult> {
    Ok(solve_mc_detailed(g, kind, cfg)?.0)
}

/// [`solve_mc`] plus the QUBO energy of the raw assignment for QUBO-based
/// backends.
pub fn solve_mc_detailed(
    g: &Graph,
    kind: SolverKind,
    cfg: &SolverConfig,
) -> Result<(CliqueResult, Option<f64>)> {
    cfg.validate()?;
    if g.is_empty() {
        return Ok((CliqueResult::new(Vec::new(), kind.name()), None));
    }
    let (mut result, energy) = match kind {
        SolverKind::Exact => (exact_max_clique(g, cfg.budget)?, None),
        SolverKind::SaClique => (sa_clique_search(g, cfg)?, None),
        SolverKind::SaQubo => {
            let q = mc_to_qubo(g, PenaltyParams::default());
            let (x, e) = sa_qubo(&q, cfg)?;
            (repair(g, &x)?, Some(e))
        }
        SolverKind::Descent => {
            let q = mc_to_qubo(g, PenaltyParams::default());
            let mut rng = rng_from_seed(cfg.seed);
            let mut best: Option<(BinaryAssignment, f64)> = None;
            for _ in 0..cfg.num_reads.max(1) {
                let start = BinaryAssignment::from_bits(
                    (0..g.num_vertices()).map(|_| rng.random::<bool>()).collect(),
                );
                let local = local_search_descent(&q, &start)?;
                if best.as_ref().is_none_or(|b| local.1 < b.1) {
                    best = Some(local);
                }
            }
            let (x, e) = best.expect("at least one start");
            (repair(g, &x)?, Some(e))
        }
        SolverKind::Sampler => {
            let q = mc_to_qubo(g, PenaltyParams::default());
            let (x, e) = sampler_solve(&q, &MockAnnealer::default(), cfg)?;
            (repair(g, &x)?, Some(e))
        }
    };
    result.solver_name = kind.name().to_string();
    Ok((result, energy))
}

/// Binary search on the clique size with [`sa_clique`] as the predicate,
/// returning the largest witness found.
fn sa_clique_search(g: &Graph, cfg: &SolverConfig) -> Result<CliqueResult> {
    let mut witness: Vec<usize> = vec![g.label(0)];
    let search = binary_search_max_clique(g, |size| {
        let attempt = cfg.with_seed(derive_seed(cfg.seed, size as u64));
        let found = sa_clique(g, size, &attempt)?;
        Ok(match found {
            Some(clique) => {
                if clique.len() > witness.len() {
                    witness = clique;
                }
                true
            }
            None => false,
        })
    });
    match search {
        // A failed size below a success was a miss; the larger witness stands.
        Ok(_) | Err(Error::NonMonotone { .. }) => Ok(CliqueResult::new(witness, SA_CLIQUE_NAME)),
        Err(e) => Err(e),
    }
}

/// Reads an assignment as a clique, dropping the lowest-degree endpoint of
/// violated pairs (smallest id on ties) until none remain.
pub fn repair(g: &Graph, x: &BinaryAssignment) -> Result<CliqueResult> {
    let mut bits = x.bits().to_vec();
    loop {
        match assignment_to_clique(g, &BinaryAssignment::from_bits(bits.clone()))? {
            Decoded::Clique(clique) => return Ok(clique),
            Decoded::Violations(pairs) => {
                let victim = pairs
                    .iter()
                    .flat_map(|&(u, v)| [u, v])
                    .min_by_key(|&v| (g.degree(v), v))
                    .expect("violations are non-empty");
                bits[victim] = false;
            }
        }
    }
}

/// A backend and its configuration, usable as the split driver's
/// subproblem solver. Call `i` runs with seed `derive_seed(seed, i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Backend {
    pub kind: SolverKind,
    pub config: SolverConfig,
}

impl Backend {
    pub fn new(kind: SolverKind, config: SolverConfig) -> Self {
        Backend { kind, config }
    }

    pub fn exact() -> Self {
        Backend::new(SolverKind::Exact, SolverConfig::default())
    }
}

impl SubproblemSolver for Backend {
    fn name(&self) -> &str {
        self.kind.name()
    }

    fn solve(&self, g: &Graph, call_index: u64) -> Result<CliqueResult> {
        let cfg = self.config.with_seed(derive_seed(self.config.seed, call_index));
        solve_mc(g, self.kind, &cfg)
    }
}
