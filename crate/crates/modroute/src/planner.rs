//! Nearest-neighbor planners: the classical single-agent variant and the
//! adapted variant for two concurrently moving agents.

use std::collections::BTreeSet;

use crate::graph::{evaluate_cost, DistanceOracle, TimedPlan, WeightedGraph};

/// Output of a planner run: a synchronized plan, its modular cost and the
/// order in which targets were reached.
#[derive(Debug, Clone)]
pub struct PlannerResult {
    pub plan: TimedPlan,
    pub total_cost: f64,
    /// (target, time index of first visit) pairs in visit order.
    pub visit_order: Vec<(usize, usize)>,
}

fn mark_visited(
    node: usize,
    t: usize,
    remaining: &mut BTreeSet<usize>,
    visit_order: &mut Vec<(usize, usize)>,
) {
    if remaining.remove(&node) {
        visit_order.push((node, t));
    }
}

/// Single-agent nearest neighbor: repeatedly walk the full shortest path to
/// the closest unvisited target (ties to the smallest node id). Targets
/// crossed mid-path count as visited. The second module waits in place for
/// the whole plan.
pub fn nn_single(
    g: &WeightedGraph,
    oracle: &DistanceOracle,
    start: usize,
    targets: &BTreeSet<usize>,
) -> PlannerResult {
    let mut remaining = targets.clone();
    let mut visit_order = Vec::new();
    let mut path = vec![start];
    mark_visited(start, 0, &mut remaining, &mut visit_order);

    let mut cur = start;
    while !remaining.is_empty() {
        // Ascending iteration plus strict `<` keeps the smallest id on ties.
        let goal = remaining
            .iter()
            .copied()
            .min_by(|&a, &b| oracle.dist(cur, a).total_cmp(&oracle.dist(cur, b)))
            .expect("remaining is nonempty");
        for &node in &oracle.path(cur, goal)[1..] {
            path.push(node);
            mark_visited(node, path.len() - 1, &mut remaining, &mut visit_order);
        }
        cur = goal;
    }

    let plan = TimedPlan {
        path2: vec![start; path.len()],
        path1: path,
    };
    let total_cost = evaluate_cost(g, &plan).expect("planner emits valid plans");
    PlannerResult {
        plan,
        total_cost,
        visit_order,
    }
}

/// Cheapest assignment of two distinct remaining targets to the two agents;
/// ties resolve to the lexicographically smallest (target1, target2) pair.
fn best_pair(
    oracle: &DistanceOracle,
    a1: usize,
    a2: usize,
    remaining: &BTreeSet<usize>,
) -> (usize, usize) {
    let mut best: Option<(f64, usize, usize)> = None;
    for &t1 in remaining {
        for &t2 in remaining {
            if t1 == t2 {
                continue;
            }
            let s = oracle.dist(a1, t1) + oracle.dist(a2, t2);
            match best {
                Some((b, _, _)) if s >= b => {}
                _ => best = Some((s, t1, t2)),
            }
        }
    }
    let (_, t1, t2) = best.expect("at least two targets remain");
    (t1, t2)
}

/// Adapted nearest neighbor for two agents.
///
/// Per time step: with two or more targets remaining, pick the pair of
/// distinct targets minimizing the summed distances and advance each agent
/// one node along its shortest path; with one target remaining, the closer
/// agent (ties to agent 1) finishes alone while the other waits. Assignments
/// are recomputed every step and any target an agent stands on is visited.
pub fn nn_two_agents(
    g: &WeightedGraph,
    oracle: &DistanceOracle,
    a1: usize,
    a2: usize,
    targets: &BTreeSet<usize>,
) -> PlannerResult {
    let mut remaining = targets.clone();
    let mut visit_order = Vec::new();
    let mut path1 = vec![a1];
    let mut path2 = vec![a2];
    mark_visited(a1, 0, &mut remaining, &mut visit_order);
    mark_visited(a2, 0, &mut remaining, &mut visit_order);

    let (mut c1, mut c2) = (a1, a2);
    while !remaining.is_empty() {
        if remaining.len() >= 2 {
            let (t1, t2) = best_pair(oracle, c1, c2, &remaining);
            if c1 != t1 {
                c1 = oracle.next_hop(c1, t1);
            }
            if c2 != t2 {
                c2 = oracle.next_hop(c2, t2);
            }
        } else {
            let &tau = remaining.iter().next().expect("one target remains");
            if oracle.dist(c1, tau) <= oracle.dist(c2, tau) {
                c1 = oracle.next_hop(c1, tau);
            } else {
                c2 = oracle.next_hop(c2, tau);
            }
        }
        path1.push(c1);
        path2.push(c2);
        let t = path1.len() - 1;
        mark_visited(c1, t, &mut remaining, &mut visit_order);
        mark_visited(c2, t, &mut remaining, &mut visit_order);
    }

    let plan = TimedPlan { path1, path2 };
    let total_cost = evaluate_cost(g, &plan).expect("planner emits valid plans");
    PlannerResult {
        plan,
        total_cost,
        visit_order,
    }
}
