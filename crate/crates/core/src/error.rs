use std::fmt;

use crate::instance::ValidationIssue;

/// Every violated invariant of an instance, in the order they were found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationErrors(pub Vec<ValidationIssue>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl std::error::Error for ValidationErrors {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    Invalid(#[from] ValidationErrors),
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("invalid subtree: {0}")]
    SubTree(String),
    #[error("instance too large: {nodes} nodes exceeds the oracle limit of {limit}")]
    InstanceTooLarge { nodes: usize, limit: usize },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("root missing")]
    RootMissing,
    #[error("LP is unbounded")]
    Unbounded,
    #[error("monotonization broke feasibility: group {group} flow {flow}")]
    MonotonizationBrokeFeasibility { group: usize, flow: f64 },
    #[error("iteration cap exceeded ({cap} iterations)")]
    IterationCapExceeded { cap: usize },
    #[error("round cap exceeded ({cap} rounds)")]
    RoundCapExceeded { cap: usize },
    #[error("gst solver failed: {0}")]
    SolverFailed(String),
    #[error("no separator within width bound {w}")]
    NoSeparator { w: usize },
    #[error("separator node unreachable within region: {0}")]
    UnreachableInRegion(String),
    #[error("non-backward cross edge found between supernodes {0} and {1}")]
    NonBackwardEdge(usize, usize),
    #[error("no (a, b) pair found with {needed} full bins")]
    NoPairFound { needed: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
