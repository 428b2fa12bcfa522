//! Joining and splitting decisions.
//!
//! Joining compares the inter-module distance against the distance from the
//! best central node to the closest remaining target. Splitting prices, for
//! every node along the joined agent's nearest-neighbor path, the cost of
//! splitting there and finishing with two separate modules.

use std::collections::BTreeSet;

use crate::cluster::{cluster_two, nearer_cluster};
use crate::error::{Error, Result};
use crate::graph::{evaluate_cost_separate, DistanceOracle, WeightedGraph};
use crate::planner::{nn_single, nn_two_agents};

/// Float slack for recognizing equal shortest-path sums.
const EPS: f64 = 1e-9;

/// Outcome of the joining test between two separated modules.
#[derive(Debug, Clone)]
pub struct JoinDecision {
    pub should_join: bool,
    /// Central node to join at; present exactly when joining is indicated.
    pub join_node: Option<usize>,
    pub d_between: f64,
    pub d_c_min: f64,
}

/// Outcome of the splitting search along the joined agent's path.
#[derive(Debug, Clone)]
pub struct SplitDecision {
    pub split_node: usize,
    pub predicted_cost: f64,
    /// The nearest-neighbor walk from the agent to the split node. The
    /// prediction prices exactly this approach, so the joined agent must
    /// follow it rather than a plain shortest path.
    pub approach: Vec<usize>,
    /// (candidate node, predicted total cost) along the agent's path.
    pub candidate_costs: Vec<(usize, f64)>,
}

/// All nodes minimizing the average distance to the two module positions;
/// exactly the nodes lying on shortest paths between them.
pub fn central_nodes(oracle: &DistanceOracle, m1: usize, m2: usize) -> BTreeSet<usize> {
    let n = oracle.node_count();
    let mut min = f64::INFINITY;
    for v in 0..n {
        let avg = (oracle.dist(v, m1) + oracle.dist(v, m2)) / 2.0;
        if avg < min {
            min = avg;
        }
    }
    (0..n)
        .filter(|&v| (oracle.dist(v, m1) + oracle.dist(v, m2)) / 2.0 <= min + EPS)
        .collect()
}

/// Decide whether to join two separated modules and where.
///
/// For each central node the distance to its closest remaining target is
/// computed; the modules join when their mutual distance does not exceed the
/// best such distance, at the central node attaining it (ties to the
/// smallest id).
pub fn join_decision(
    oracle: &DistanceOracle,
    m1: usize,
    m2: usize,
    remaining: &BTreeSet<usize>,
) -> Result<JoinDecision> {
    if remaining.is_empty() {
        return Err(Error::NoRemaining);
    }
    let mut best: Option<(f64, usize)> = None;
    for c in central_nodes(oracle, m1, m2) {
        let d_c = remaining
            .iter()
            .map(|&t| oracle.dist(c, t))
            .fold(f64::INFINITY, f64::min);
        match best {
            Some((b, _)) if d_c >= b => {}
            _ => best = Some((d_c, c)),
        }
    }
    let (d_c_min, n_j) = best.expect("central node set is nonempty");
    let d_between = oracle.dist(m1, m2);
    let should_join = d_between <= d_c_min;
    Ok(JoinDecision {
        should_join,
        join_node: should_join.then_some(n_j),
        d_between,
        d_c_min,
    })
}

/// Choose the node at which the joined agent should split.
///
/// When the remaining targets form two well-separated clusters (index below
/// `d_threshold`), only the cluster nearer to the agent supplies the path of
/// candidate split nodes; the predicted cost of each candidate still covers
/// all remaining targets. Split modules are priced as separate agents with
/// no shared-edge discount. Ties go to the earliest candidate on the path.
pub fn split_node(
    g: &WeightedGraph,
    oracle: &DistanceOracle,
    a: usize,
    remaining: &BTreeSet<usize>,
    d_threshold: f64,
) -> Result<SplitDecision> {
    if remaining.is_empty() {
        return Err(Error::NoRemaining);
    }
    let filtered: BTreeSet<usize> = if remaining.len() >= 2 {
        let split = cluster_two(oracle, remaining)?;
        if split.db_index < d_threshold {
            nearer_cluster(oracle, &split, a).clone()
        } else {
            remaining.clone()
        }
    } else {
        remaining.clone()
    };

    let path = nn_single(g, oracle, a, &filtered).plan.path1;

    let mut candidate_costs = Vec::with_capacity(path.len());
    let mut prefix = 0.0;
    let mut rem_after = remaining.clone();
    rem_after.remove(&path[0]);
    let mut best: Option<(f64, usize, usize)> = None;
    for (r, &node) in path.iter().enumerate() {
        if r > 0 {
            prefix += g
                .edge_weight(path[r - 1], node)
                .expect("nearest-neighbor path is adjacent");
            rem_after.remove(&node);
        }
        let tail = if rem_after.is_empty() {
            0.0
        } else {
            let res = nn_two_agents(g, oracle, node, node, &rem_after);
            evaluate_cost_separate(g, &res.plan).expect("planner emits valid plans")
        };
        let cost = prefix + tail;
        candidate_costs.push((node, cost));
        match best {
            Some((b, _, _)) if cost >= b => {}
            _ => best = Some((cost, node, r)),
        }
    }
    let (predicted_cost, split_node, r) = best.expect("path has at least one node");
    Ok(SplitDecision {
        split_node,
        predicted_cost,
        approach: path[..=r].to_vec(),
        candidate_costs,
    })
}
