use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: u32, n: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid independence test: {0}")]
    InvalidTest(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("test of size {size} exceeds the size budget {limit}")]
    BudgetExceededSize { size: usize, limit: usize },
    #[error("distinct test count would exceed the count budget {limit}")]
    BudgetExceededCount { limit: u64 },
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("incomplete component discovery: {0}")]
    IncompleteComponents(String),
    #[error("region connectivity exceeds the guaranteed bound: {0}")]
    RegionBoundViolated(String),
}

impl Error {
    /// True for either flavor of budget exhaustion.
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceededSize { .. } | Error::BudgetExceededCount { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
