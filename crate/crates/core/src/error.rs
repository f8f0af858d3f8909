use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search budget of {limit} exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("variable y[{vertex},{color}] is not covered by the assignment")]
    UnassignedVariable { vertex: usize, color: usize },

    #[error("polynomial #{index} has degree {degree}, above the bound {bound}")]
    DegreeExceeded {
        index: usize,
        degree: usize,
        bound: usize,
    },

    #[error("invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
