use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("infeasible instance: edge {edge} has {available} admissible labels but {required} are required")]
    Infeasible {
        edge: Edge,
        available: usize,
        required: usize,
    },

    /// A Nullstellensatz step failed although its certificate said it could
    /// not. Never expected when the request meets the theorem's bounds.
    #[error("internal certificate failure: {0}")]
    Certificate(String),

    /// The instance was run below the guaranteed bound and no labeling was
    /// found at the given stage.
    #[error("no labeling found ({0})")]
    Unsolved(String),

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("search space of about {required} assignments exceeds the cap of {cap}")]
    CapExceeded { required: u128, cap: u128 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
