//! Maximum-clique solving for size-limited subproblem solvers.
//!
//! The crate decomposes an arbitrary graph into subgraphs small enough for a
//! bounded solver (an annealer, an exact oracle, a heuristic), solves those,
//! and combines the answers into a maximum clique of the input:
//!
//! - [`graph`]: the graph type, generators and DIMACS I/O.
//! - [`chimera`]: Chimera hardware graphs, edge-contraction benchmarks and
//!   the clique-capacity model.
//! - [`reduce`]: k-core extraction and lower-bound edge pruning.
//! - [`partition`]: CH-partitioning, vertex splitting and the worklist
//!   driver [`partition::split_solve`].
//! - [`qubo`]: the QUBO/Ising formulation of maximum clique.
//! - [`solvers`]: exact branch-and-bound, simulated annealing variants,
//!   local-search descent and the sampler contract.
//! - [`bench`]: experiment configuration, batch runs and CSV output.

pub mod bench;
pub mod chimera;
mod error;
pub mod graph;
pub mod partition;
pub mod qubo;
pub mod reduce;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{CliqueResult, Graph, SolveStats};
pub use partition::{split_solve, CHPartition, SplitConfig};
pub use qubo::{BinaryAssignment, IsingModel, PenaltyParams, Qubo};
pub use solvers::{solve_mc, SolverConfig, SolverKind};

/// Seeded generator used everywhere randomness is needed.
///
/// ChaCha with 8 rounds: portable, stable output for a given seed on every
/// platform, so experiments are bit-reproducible.
pub type Rng = rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}

/// Mixes a base seed with a stream index (SplitMix64 finalizer), used to give
/// every sub-run its own independent generator.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
