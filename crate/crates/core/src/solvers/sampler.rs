//! Sampler contract standing in for an annealer, plus the read-and-polish
//! pipeline that consumes it.

use super::descent::local_search_descent;
use super::sa_qubo::sa_qubo;
use super::SolverConfig;
use crate::qubo::{BinaryAssignment, Qubo};
use crate::{derive_seed, Error, Result};

pub const SAMPLER_NAME: &str = "sampler";

/// Samples sorted by ascending energy (stable for equal energies).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SampleSet {
    samples: Vec<(BinaryAssignment, f64)>,
}

impl SampleSet {
    /// Evaluates every assignment against `q` and sorts.
    pub fn from_assignments(q: &Qubo, assignments: Vec<BinaryAssignment>) -> Result<Self> {
        let mut samples = assignments
            .into_iter()
            .map(|x| q.evaluate(&x).map(|e| (x, e)))
            .collect::<Result<Vec<_>>>()?;
        samples.sort_by(|a, b| a.1.total_cmp(&b.1));
        Ok(SampleSet { samples })
    }

    pub fn samples(&self) -> &[(BinaryAssignment, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn lowest(&self) -> Option<&(BinaryAssignment, f64)> {
        self.samples.first()
    }
}

/// Anything that turns a QUBO into candidate assignments.
pub trait Sampler {
    fn sample(&self, q: &Qubo, num_reads: usize, seed: u64) -> Result<SampleSet>;
}

/// Mock annealer: every read is a short independent [`sa_qubo`] run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MockAnnealer {
    pub steps_per_read: u64,
}

impl Default for MockAnnealer {
    fn default() -> Self {
        MockAnnealer {
            steps_per_read: 200,
        }
    }
}

impl Sampler for MockAnnealer {
    fn sample(&self, q: &Qubo, num_reads: usize, seed: u64) -> Result<SampleSet> {
        let reads = (0..num_reads as u64)
            .map(|read| {
                let cfg = SolverConfig {
                    seed: derive_seed(seed, read),
                    budget: Some(self.steps_per_read),
                    ..SolverConfig::default()
                };
                sa_qubo(q, &cfg).map(|(x, _)| x)
            })
            .collect::<Result<Vec<_>>>()?;
        SampleSet::from_assignments(q, reads)
    }
}

/// Returns the same assignment for every read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSampler(pub BinaryAssignment);

impl Sampler for FixedSampler {
    fn sample(&self, q: &Qubo, num_reads: usize, _seed: u64) -> Result<SampleSet> {
        SampleSet::from_assignments(q, vec![self.0.clone(); num_reads])
    }
}

/// Draws `cfg.num_reads` samples, polishes each with
/// [`local_search_descent`] and returns the best (first on ties).
pub fn sampler_solve<S: Sampler + ?Sized>(
    q: &Qubo,
    sampler: &S,
    cfg: &SolverConfig,
) -> Result<(BinaryAssignment, f64)> {
    if cfg.num_reads == 0 {
        return Err(Error::InvalidArgument("num_reads must be at least 1".into()));
    }
    let set = sampler.sample(q, cfg.num_reads, cfg.seed)?;
    let mut best: Option<(BinaryAssignment, f64)> = None;
    for (x, _) in set.samples() {
        let polished = local_search_descent(q, x)?;
        if best.as_ref().is_none_or(|b| polished.1 < b.1) {
            best = Some(polished);
        }
    }
    best.ok_or(Error::EmptySampleSet)
}
