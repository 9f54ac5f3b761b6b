use crate::graph::Graph;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for graph with {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("assignment has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("unknown solver `{0}`")]
    UnknownSolver(String),

    #[error("search budget exhausted after {nodes} nodes (best clique so far: {} vertices)", best.len())]
    BudgetExhausted { nodes: u64, best: Vec<usize> },

    #[error("sampler returned no samples")]
    EmptySampleSet,

    #[error("predicate is not monotone: true at {true_at} but false at {false_at}")]
    NonMonotone { true_at: usize, false_at: usize },

    #[error("solver failed on a {}-vertex subproblem: {source}", graph.num_vertices())]
    Subproblem { graph: Box<Graph>, source: Box<Error> },

    #[error("subproblem limit of {0} exceeded")]
    TooManySubproblems(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures raised by a solver backend rather than by bad input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::BudgetExhausted { .. }
                | Error::EmptySampleSet
                | Error::Subproblem { .. }
                | Error::TooManySubproblems(_)
        )
    }
}
