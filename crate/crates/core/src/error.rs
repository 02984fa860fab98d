use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed input: {msg}")]
    Malformed { line: usize, msg: String },

    #[error("line {line}: degree bound violated: vertex {vertex} would have degree {degree} > {bound}")]
    DegreeBound { line: usize, vertex: usize, degree: usize, bound: usize },

    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },

    #[error("{what}: size {got} exceeds the guard of {limit}")]
    GuardExceeded { what: &'static str, limit: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is not symmetric (|a[{i}][{j}] - a[{j}][{i}]| = {gap:e})")]
    NotSymmetric { i: usize, j: usize, gap: f64 },

    #[error("eigensolver did not converge after {sweeps} iterations (residual {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("{what}: gave up after {attempts} attempts")]
    Exhausted { what: &'static str, attempts: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for the errors that stem from a size guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
