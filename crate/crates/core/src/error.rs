use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node index {index} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { index: usize, node_count: usize },

    #[error("edge {source_node}->{target}: weight {weight} must be finite and nonzero")]
    InvalidWeight {
        source_node: usize,
        target: usize,
        weight: f64,
    },

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("advice length {advice} does not match node count {nodes}")]
    AdviceLength { advice: usize, nodes: usize },

    #[error("advice entry {value} at position {index} is not one of -1, 0, +1")]
    AdviceValue { index: usize, value: i64 },

    #[error("invalid knapsack instance: {0}")]
    InvalidKnapsack(String),

    #[error("reduction requires at least 2 items, got {0}")]
    TooFewItems(usize),

    #[error("weight {weight} of item {item} is not integral after scaling by {scale}")]
    NonIntegralWeight {
        item: usize,
        weight: f64,
        scale: f64,
    },

    #[error("capacity {0} exceeds the solver's table limit")]
    CapacityOverflow(f64),

    #[error("brute force limited to {limit} items, instance has {items}")]
    TooManyItems { items: usize, limit: usize },

    #[error("pressure {pressure} out of range 1..={nodes}")]
    PressureOutOfRange { pressure: usize, nodes: usize },

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Format(String),

    #[error("nothing to plot: {0}")]
    EmptyFigure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("worker pool: {0}")]
    Pool(String),
}

impl Error {
    /// True for failures caused by the caller's data rather than by the program.
    pub fn is_data_error(&self) -> bool {
        !matches!(self, Error::Pool(_))
    }
}
