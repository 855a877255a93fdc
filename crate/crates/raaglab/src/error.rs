use thiserror::Error;

/// Errors shared by all modules.
///
/// The CLI maps `Input` to exit code 2 and `Resource` to exit code 3;
/// `ChainFailure` is a mathematically negative outcome (exit code 1).
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("input error: {0}")]
    Input(String),

    /// A computation would exceed a configured size cap.
    #[error("resource cap exceeded: estimated {estimate} vertices, cap {cap}")]
    Resource { estimate: usize, cap: usize },

    /// A thickness chain could not be completed at the named step.
    #[error("chain failure at step {step}: {reason}")]
    ChainFailure { step: usize, reason: String },

    /// An invasive subgraph is not colour-regular; carries the offending pair.
    #[error("subgraph not regular: {label}-hyperplanes {first} and {second} have thicknesses {first_thickness} and {second_thickness}")]
    NotRegular {
        label: String,
        first: usize,
        second: usize,
        first_thickness: usize,
        second_thickness: usize,
    },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
