use thiserror::Error;

/// Errors produced by graph construction, plan evaluation, the decision
/// layer, the exact solver and the instance generators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must contain at least one node")]
    EmptyGraph,
    #[error("node {node} out of range for graph with {node_count} nodes")]
    InvalidNode { node: usize, node_count: usize },
    #[error("edge ({u}, {v}) has weight {weight}; edge weights must be strictly positive and finite")]
    NonPositiveWeight { u: usize, v: usize, weight: f64 },
    #[error("self-loop on node {node} is not allowed")]
    SelfLoop { node: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph is disconnected: node {unreachable} cannot be reached from node {from}")]
    Disconnected { unreachable: usize, from: usize },
    #[error("timed plan paths must be nonempty and of equal length")]
    MalformedPlan,
    #[error("plan step {t} moves between non-adjacent nodes {from} and {to}")]
    NotAdjacent { t: usize, from: usize, to: usize },
    #[error("instance must have at least one target")]
    NoTargets,
    #[error("modules marked as joined must share a start node (got {m1} and {m2})")]
    JoinedApart { m1: usize, m2: usize },
    #[error("clustering requires at least two targets, got {0}")]
    TooFewTargets(usize),
    #[error("no remaining targets for decision")]
    NoRemaining,
    #[error(
        "instance too large for exact search: {targets} targets (max {max_targets}) on {nodes} nodes (max {max_nodes})"
    )]
    OracleGuard {
        nodes: usize,
        targets: usize,
        max_nodes: usize,
        max_targets: usize,
    },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("cluster condition violated: {0}")]
    ClusterCondition(String),
    #[error("failed to parse instance: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
