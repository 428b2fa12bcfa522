//! Routing for two modular agents on weighted undirected graphs.
//!
//! Two vehicles ("modules") must jointly visit a set of target nodes at
//! minimum traversal cost. Modules may attach into a single agent that pays
//! each edge once, and detach again. This crate provides:
//!
//! - graph primitives, all-pairs shortest paths and plan cost evaluation
//!   ([`graph`]),
//! - nearest-neighbor planners for one and two agents ([`planner`]),
//! - two-way target clustering under the graph metric ([`cluster`]),
//! - the join and split decision rules ([`decision`]),
//! - the full modular routing loop and its non-modular baseline
//!   ([`router`]),
//! - an exact small-instance solver ([`oracle`]),
//! - seeded benchmark instance generators ([`gen`]).
//!
//! ```
//! use modroute::{gen_theory, route, TheoryGenParams};
//!
//! let instance = gen_theory(&TheoryGenParams {
//!     alpha: 2.0,
//!     lambda: 5.0,
//!     beta1: 1.0,
//!     beta2: 1.0,
//!     cluster_size: 2,
//! })
//! .unwrap();
//! let result = route(&instance, 0.4);
//! assert!((result.total_cost - 14.0).abs() < 1e-9);
//! ```

pub mod cluster;
pub mod decision;
pub mod error;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod planner;
pub mod router;

pub use cluster::{cluster_two, nearer_cluster, ClusterSplit};
pub use decision::{central_nodes, join_decision, split_node, JoinDecision, SplitDecision};
pub use error::{Error, Result};
pub use gen::{gen_clustered, gen_theory, ClusteredGenParams, TheoryGenParams};
pub use graph::{
    all_pairs, evaluate_cost, evaluate_cost_separate, shortest_path, visited_targets,
    DistanceOracle, Instance, TimedPlan, WeightedGraph,
};
pub use oracle::{exact_optimal, MAX_ORACLE_NODES, MAX_ORACLE_TARGETS};
pub use planner::{nn_single, nn_two_agents, PlannerResult};
pub use router::{baseline_non_modular, route, EventKind, RouteEvent, RouteResult};
