use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("search aborted after {nodes} nodes (cap {cap})")]
    SearchAborted { nodes: u64, cap: u64 },

    #[error("vertex {vertex} is outside the radius-{radius} ball of {center}")]
    LocalityViolation { center: u64, vertex: u64, radius: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("class promise violated: {0}")]
    PromiseViolated(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("LP solver did not converge: {0}")]
    NonConvergence(String),

    #[error("{phase}: {source}")]
    Phase {
        phase: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn in_phase(self, phase: &str) -> Error {
        match self {
            Error::Phase { .. } => self,
            other => Error::Phase {
                phase: phase.to_string(),
                source: Box::new(other),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
