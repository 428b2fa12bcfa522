//! Exact minimum-cost solver for small instances.
//!
//! Least-cost search over joint states (position 1, position 2, visited-
//! target bitmask) under synchronized steps with free waiting. Serves as
//! ground truth for every heuristic evaluation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Instance, TimedPlan};

/// State-space guards: beyond these the joint search is refused.
pub const MAX_ORACLE_TARGETS: usize = 12;
pub const MAX_ORACLE_NODES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
struct QueueEntry {
    cost: f64,
    state: usize,
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on cost; tie on the packed state index keeps the
        // expansion order (and hence predecessors) deterministic.
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.state.cmp(&self.state))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact optimum for the two-module problem.
///
/// With `modular = true` two modules crossing the same directed edge at the
/// same step pay it once; with `modular = false` both always pay. The
/// returned plan is an optimal pair of synchronized paths.
pub fn exact_optimal(instance: &Instance, modular: bool) -> Result<(f64, TimedPlan)> {
    let g = &instance.graph;
    let n = g.node_count();
    let k = instance.targets.len();
    if n > MAX_ORACLE_NODES || k > MAX_ORACLE_TARGETS {
        return Err(Error::OracleGuard {
            nodes: n,
            targets: k,
            max_nodes: MAX_ORACLE_NODES,
            max_targets: MAX_ORACLE_TARGETS,
        });
    }
    let targets: Vec<usize> = instance.targets.iter().copied().collect();
    let target_bit = |node: usize| -> usize {
        targets
            .binary_search(&node)
            .map_or(0, |i| 1usize << i)
    };
    let full_mask = (1usize << k) - 1;
    let masks = 1usize << k;
    let pack = |p1: usize, p2: usize, mask: usize| (p1 * n + p2) * masks + mask;

    let (m1, m2) = instance.module_starts;
    let start_mask = target_bit(m1) | target_bit(m2);
    let start = pack(m1, m2, start_mask);

    let state_count = n * n * masks;
    let mut dist = vec![f64::INFINITY; state_count];
    let mut pred = vec![usize::MAX; state_count];
    dist[start] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(QueueEntry {
        cost: 0.0,
        state: start,
    });

    let mut goal = None;
    while let Some(QueueEntry { cost, state }) = heap.pop() {
        if cost > dist[state] {
            continue;
        }
        let mask = state % masks;
        let p2 = (state / masks) % n;
        let p1 = state / (masks * n);
        if mask == full_mask {
            goal = Some(state);
            break;
        }
        // Each module stays or crosses one incident edge; the no-op of both
        // staying is pruned.
        let moves1: Vec<(usize, f64)> = std::iter::once((p1, 0.0))
            .chain(g.neighbors(p1).iter().copied())
            .collect();
        let moves2: Vec<(usize, f64)> = std::iter::once((p2, 0.0))
            .chain(g.neighbors(p2).iter().copied())
            .collect();
        for &(q1, w1) in &moves1 {
            for &(q2, w2) in &moves2 {
                if q1 == p1 && q2 == p2 {
                    continue;
                }
                let same_directed_edge = p1 == p2 && q1 == q2 && q1 != p1;
                let step = if modular && same_directed_edge {
                    w1
                } else {
                    w1 + w2
                };
                let new_mask = mask | target_bit(q1) | target_bit(q2);
                let next = pack(q1, q2, new_mask);
                let cand = cost + step;
                if cand < dist[next] {
                    dist[next] = cand;
                    pred[next] = state;
                    heap.push(QueueEntry {
                        cost: cand,
                        state: next,
                    });
                }
            }
        }
    }

    let goal = goal.unwrap_or(start); // start already complete when mask is full
    let mut states = vec![goal];
    let mut cur = goal;
    while cur != start {
        cur = pred[cur];
        states.push(cur);
    }
    states.reverse();
    let path1: Vec<usize> = states.iter().map(|s| s / (masks * n)).collect();
    let path2: Vec<usize> = states.iter().map(|s| (s / masks) % n).collect();
    Ok((dist[goal], TimedPlan { path1, path2 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_theory, TheoryGenParams};
    use crate::graph::{visited_targets, WeightedGraph};

    fn theory_instance() -> Instance {
        gen_theory(&TheoryGenParams {
            alpha: 2.0,
            lambda: 5.0,
            beta1: 1.0,
            beta2: 1.0,
            cluster_size: 2,
        })
        .unwrap()
    }

    #[test]
    fn modular_optimum_on_two_cluster_instance() {
        let inst = theory_instance();
        let (cost, plan) = exact_optimal(&inst, true).unwrap();
        assert!((cost - 14.0).abs() < 1e-9);
        assert_eq!(visited_targets(&plan, &inst.targets), inst.targets);
    }

    #[test]
    fn non_modular_optimum_on_two_cluster_instance() {
        let inst = theory_instance();
        let (cost, _) = exact_optimal(&inst, false).unwrap();
        assert!((cost - 16.0).abs() < 1e-9);
    }

    #[test]
    fn single_target_on_start_costs_nothing() {
        let g = WeightedGraph::new(2, &[(0, 1, 1.0)]).unwrap();
        let inst = Instance::new(g, (0, 0), [0].into_iter().collect(), true).unwrap();
        assert_eq!(exact_optimal(&inst, true).unwrap().0, 0.0);
        assert_eq!(exact_optimal(&inst, false).unwrap().0, 0.0);
    }

    #[test]
    fn guard_refuses_oversized_instances() {
        let edges: Vec<_> = (0..29).map(|i| (i, i + 1, 1.0)).collect();
        let g = WeightedGraph::new(30, &edges).unwrap();
        let inst = Instance::new(g, (0, 0), [29].into_iter().collect(), true).unwrap();
        assert!(matches!(
            exact_optimal(&inst, true),
            Err(Error::OracleGuard { .. })
        ));
    }

    #[test]
    fn optimum_invariant_under_module_relabeling() {
        let g = WeightedGraph::new(
            6,
            &[
                (0, 1, 2.0),
                (1, 2, 1.0),
                (2, 3, 3.0),
                (3, 4, 1.5),
                (1, 5, 2.5),
                (5, 3, 1.0),
            ],
        )
        .unwrap();
        let targets: std::collections::BTreeSet<usize> = [2, 4, 5].into_iter().collect();
        let a = Instance::new(g.clone(), (0, 3), targets.clone(), false).unwrap();
        let b = Instance::new(g, (3, 0), targets, false).unwrap();
        for modular in [true, false] {
            let ca = exact_optimal(&a, modular).unwrap().0;
            let cb = exact_optimal(&b, modular).unwrap().0;
            assert!((ca - cb).abs() < 1e-9);
        }
    }

    #[test]
    fn modular_never_worse_than_non_modular() {
        let inst = theory_instance();
        let m = exact_optimal(&inst, true).unwrap().0;
        let nm = exact_optimal(&inst, false).unwrap().0;
        assert!(m <= nm + 1e-9);
    }
}
