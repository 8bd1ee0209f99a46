use thiserror::Error;

use crate::machine::StepError;

/// Failures while exploring the runs of a machine on an input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error(transparent)]
    Step(#[from] StepError),
    #[error("max_nodes exceeded: a computation has more than {limit} nodes (at {config})")]
    MaxNodes { limit: usize, config: String },
    #[error("tape_cap exceeded: a tape of {config} is longer than {limit}")]
    TapeCap { limit: usize, config: String },
    #[error("cycle detected: {config} is reachable from itself")]
    Cycle { config: String },
    #[error("more than {limit} computations; refusing to enumerate")]
    TooManyComputations { limit: usize },
}

impl RunError {
    /// Name of the violated bound, if any.
    pub fn bound(&self) -> Option<&'static str> {
        match self {
            RunError::MaxNodes { .. } => Some("max_nodes"),
            RunError::TapeCap { .. } => Some("tape_cap"),
            _ => None,
        }
    }
}
