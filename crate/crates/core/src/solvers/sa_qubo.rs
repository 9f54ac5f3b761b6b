//! Single-flip simulated annealing over a QUBO.

use rand::Rng;

use super::{initial_temperature, SolverConfig, DEFAULT_SA_STEPS};
use crate::qubo::{BinaryAssignment, Qubo};
use crate::{rng_from_seed, Result};

pub const SA_QUBO_NAME: &str = "sa-qubo";

/// Metropolis annealing from a uniform random start: each step proposes
/// flipping one random bit, with geometric cooling `T <- alpha * T` (reset
/// after a thousandfold drop). Returns the lowest-energy assignment seen.
pub fn sa_qubo(q: &Qubo, cfg: &SolverConfig) -> Result<(BinaryAssignment, f64)> {
    cfg.validate()?;
    let n = q.num_variables();
    if n == 0 {
        return Ok((BinaryAssignment::zeros(0), 0.0));
    }
    let couplings = q.couplings();
    let mut rng = rng_from_seed(cfg.seed);
    let budget = cfg.budget.unwrap_or(DEFAULT_SA_STEPS);

    let mut x: Vec<bool> = (0..n).map(|_| rng.random::<bool>()).collect();
    let mut energy = q.evaluate(&BinaryAssignment::from_bits(x.clone()))?;
    let mut best = (x.clone(), energy);

    let t0 = match cfg.initial_temperature {
        Some(t) => t,
        None => {
            let probes: Vec<f64> = (0..100)
                .map(|_| couplings.flip_delta(&x, rng.random_range(0..n as u64) as usize))
                .collect();
            initial_temperature(&probes)
        }
    };
    let mut temperature = t0;
    let floor = t0 * 1e-3;
    for _ in 0..budget {
        let i = rng.random_range(0..n as u64) as usize;
        let d = couplings.flip_delta(&x, i);
        if d <= 0.0 || rng.random::<f64>() < (-d / temperature).exp() {
            x[i] = !x[i];
            energy += d;
            if energy < best.1 {
                best = (x.clone(), energy);
            }
        }
        temperature *= cfg.alpha;
        if temperature < floor {
            temperature = t0;
        }
    }
    let assignment = BinaryAssignment::from_bits(best.0);
    // Recompute to shed accumulated rounding on non-integer instances.
    let energy = q.evaluate(&assignment)?;
    Ok((assignment, energy))
}
