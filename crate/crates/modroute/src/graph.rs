//! Weighted undirected graphs, shortest paths and timed-plan cost evaluation.
//!
//! The cost of a pair of synchronized paths is the sum, over time steps, of
//! the weights of the distinct directed edges traversed at that step. Two
//! modules crossing the same edge in the same direction at the same time are
//! implicitly joined and pay the edge weight once; waiting is free.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected graph with strictly positive edge weights.
///
/// Construction validates every invariant: weights strictly positive and
/// finite, no self-loops, at most one edge per unordered pair, and the graph
/// connected. All downstream code may assume totality of shortest distances.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    node_count: usize,
    adj: Vec<Vec<(usize, f64)>>,
    weights: HashMap<(usize, usize), f64>,
}

impl WeightedGraph {
    pub fn new(node_count: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); node_count];
        let mut weights = HashMap::new();
        for &(u, v, w) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::InvalidNode { node, node_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { node: u });
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::NonPositiveWeight { u, v, weight: w });
            }
            let key = (u.min(v), u.max(v));
            if weights.insert(key, w).is_some() {
                return Err(Error::DuplicateEdge { u: key.0, v: key.1 });
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for nbrs in &mut adj {
            nbrs.sort_by_key(|&(n, _)| n);
        }

        // Reject disconnected graphs up front; every shortest distance is
        // then finite and `all_pairs` cannot fail.
        let mut seen = vec![false; node_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if let Some(unreachable) = seen.iter().position(|s| !s) {
            return Err(Error::Disconnected {
                unreachable,
                from: 0,
            });
        }

        Ok(Self {
            node_count,
            adj,
            weights,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Neighbors of `u` with edge weights, sorted by node id.
    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[u]
    }

    /// Weight of the edge between `u` and `v`, if present.
    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        self.weights.get(&(u.min(v), u.max(v))).copied()
    }

    /// Edge list sorted by (u, v); the canonical serialization order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out: Vec<(usize, usize, f64)> =
            self.weights.iter().map(|(&(u, v), &w)| (u, v, w)).collect();
        out.sort_by_key(|e| (e.0, e.1));
        out
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.node_count {
            return Err(Error::InvalidNode {
                node,
                node_count: self.node_count,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapEntry {
    cost: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap, we want the cheapest entry
        // first, ties by smallest node id.
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(g: &WeightedGraph, source: usize) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry {
        cost: 0.0,
        node: source,
    });
    while let Some(HeapEntry { cost, node }) = heap.pop() {
        if cost > dist[node] {
            continue;
        }
        for &(next, w) in g.neighbors(node) {
            let cand = cost + w;
            if cand < dist[next] {
                dist[next] = cand;
                heap.push(HeapEntry {
                    cost: cand,
                    node: next,
                });
            }
        }
    }
    dist
}

/// Walk from `u` toward `v` always taking the smallest-id neighbor that lies
/// on a shortest path, given the distances-to-`v` of all nodes.
fn greedy_walk(g: &WeightedGraph, u: usize, v: usize, dist_to_v: &[f64]) -> Vec<usize> {
    let mut path = vec![u];
    let mut cur = u;
    while cur != v {
        let mut best: Option<(f64, usize)> = None;
        for &(x, w) in g.neighbors(cur) {
            let through = w + dist_to_v[x];
            match best {
                Some((b, _)) if through >= b => {}
                _ => best = Some((through, x)),
            }
        }
        let (_, next) = best.expect("connected graph node has a neighbor");
        path.push(next);
        cur = next;
        debug_assert!(path.len() <= g.node_count(), "shortest-path walk cycled");
    }
    path
}

/// Minimum-cost path between two nodes.
///
/// Ties are broken by the lexicographically smallest next-hop node id, so
/// the returned path is deterministic.
pub fn shortest_path(g: &WeightedGraph, u: usize, v: usize) -> Result<(f64, Vec<usize>)> {
    g.check_node(u)?;
    g.check_node(v)?;
    let dist_to_v = dijkstra(g, v);
    let path = greedy_walk(g, u, v, &dist_to_v);
    Ok((dist_to_v[u], path))
}

/// All-pairs shortest distances with deterministic path reconstruction.
#[derive(Debug, Clone)]
pub struct DistanceOracle {
    n: usize,
    dist: Vec<f64>,
    next: Vec<usize>,
}

impl DistanceOracle {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Shortest distance between `u` and `v`.
    pub fn dist(&self, u: usize, v: usize) -> f64 {
        self.dist[u * self.n + v]
    }

    /// First node after `u` on the canonical shortest path toward `v`.
    pub fn next_hop(&self, u: usize, v: usize) -> usize {
        self.next[u * self.n + v]
    }

    /// Node-expanded canonical shortest path from `u` to `v` (inclusive).
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = self.next_hop(cur, v);
            path.push(cur);
            debug_assert!(path.len() <= self.n, "next_hop walk cycled");
        }
        path
    }
}

/// Precompute shortest distances and next hops for every node pair.
pub fn all_pairs(g: &WeightedGraph) -> DistanceOracle {
    let n = g.node_count();
    let mut dist = vec![0.0f64; n * n];
    for u in 0..n {
        let row = dijkstra(g, u);
        dist[u * n..(u + 1) * n].copy_from_slice(&row);
    }
    // Symmetrize: Dijkstra from u and from v sum the same weights in
    // different orders and may disagree in the last ulp.
    for u in 0..n {
        for v in (u + 1)..n {
            let d = dist[u * n + v].min(dist[v * n + u]);
            dist[u * n + v] = d;
            dist[v * n + u] = d;
        }
    }
    let mut next = vec![0usize; n * n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                next[u * n + v] = u;
                continue;
            }
            let mut best: Option<(f64, usize)> = None;
            for &(x, w) in g.neighbors(u) {
                let through = w + dist[x * n + v];
                match best {
                    Some((b, _)) if through >= b => {}
                    _ => best = Some((through, x)),
                }
            }
            next[u * n + v] = best.expect("connected graph node has a neighbor").1;
        }
    }
    DistanceOracle { n, dist, next }
}

/// Per-module node sequences synchronized in time.
///
/// Consecutive entries are either equal (a wait step) or adjacent in the
/// graph; both paths have the same length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimedPlan {
    pub path1: Vec<usize>,
    pub path2: Vec<usize>,
}

impl TimedPlan {
    pub fn new(path1: Vec<usize>, path2: Vec<usize>) -> Result<Self> {
        if path1.is_empty() || path1.len() != path2.len() {
            return Err(Error::MalformedPlan);
        }
        Ok(Self { path1, path2 })
    }

    /// Final time index T (paths have T + 1 entries).
    pub fn horizon(&self) -> usize {
        self.path1.len() - 1
    }

    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        if self.path1.is_empty() || self.path1.len() != self.path2.len() {
            return Err(Error::MalformedPlan);
        }
        for path in [&self.path1, &self.path2] {
            for t in 1..path.len() {
                let (from, to) = (path[t - 1], path[t]);
                if from != to && g.edge_weight(from, to).is_none() {
                    return Err(Error::NotAdjacent { t, from, to });
                }
            }
        }
        Ok(())
    }
}

fn cost_impl(g: &WeightedGraph, plan: &TimedPlan, dedup: bool) -> Result<f64> {
    if plan.path1.is_empty() || plan.path1.len() != plan.path2.len() {
        return Err(Error::MalformedPlan);
    }
    let mut total = 0.0;
    for t in 1..plan.path1.len() {
        let mv1 = (plan.path1[t - 1], plan.path1[t]);
        let mv2 = (plan.path2[t - 1], plan.path2[t]);
        let mut step = 0.0;
        if mv1.0 != mv1.1 {
            step += g.edge_weight(mv1.0, mv1.1).ok_or(Error::NotAdjacent {
                t,
                from: mv1.0,
                to: mv1.1,
            })?;
        }
        if mv2.0 != mv2.1 {
            let w = g.edge_weight(mv2.0, mv2.1).ok_or(Error::NotAdjacent {
                t,
                from: mv2.0,
                to: mv2.1,
            })?;
            // Same directed edge at the same time: the modules are joined
            // and pay once. Opposite directions swap positions and pay twice.
            if !(dedup && mv1 == mv2) {
                step += w;
            }
        }
        total += step;
    }
    Ok(total)
}

/// Total cost of a timed plan for modular agents: distinct directed edges
/// per time step are paid once, waits are free.
pub fn evaluate_cost(g: &WeightedGraph, plan: &TimedPlan) -> Result<f64> {
    cost_impl(g, plan, true)
}

/// Total cost with no shared-edge discount; each module always pays its own
/// traversals. Used for non-modular baselines and split-cost prediction.
pub fn evaluate_cost_separate(g: &WeightedGraph, plan: &TimedPlan) -> Result<f64> {
    cost_impl(g, plan, false)
}

/// Every target appearing anywhere in either path (t = 0 included).
pub fn visited_targets(plan: &TimedPlan, targets: &BTreeSet<usize>) -> BTreeSet<usize> {
    plan.path1
        .iter()
        .chain(plan.path2.iter())
        .filter(|n| targets.contains(n))
        .copied()
        .collect()
}

/// A solvable unit: graph, the two module start nodes and the target set.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: WeightedGraph,
    pub module_starts: (usize, usize),
    pub targets: BTreeSet<usize>,
    pub start_joined: bool,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    nodes: usize,
    edges: Vec<(usize, usize, f64)>,
    modules: (usize, usize),
    targets: Vec<usize>,
    #[serde(default)]
    start_joined: Option<bool>,
}

impl Instance {
    pub fn new(
        graph: WeightedGraph,
        module_starts: (usize, usize),
        targets: BTreeSet<usize>,
        start_joined: bool,
    ) -> Result<Self> {
        let n = graph.node_count();
        for node in [module_starts.0, module_starts.1] {
            if node >= n {
                return Err(Error::InvalidNode {
                    node,
                    node_count: n,
                });
            }
        }
        if targets.is_empty() {
            return Err(Error::NoTargets);
        }
        if let Some(&node) = targets.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidNode {
                node,
                node_count: n,
            });
        }
        if start_joined && module_starts.0 != module_starts.1 {
            return Err(Error::JoinedApart {
                m1: module_starts.0,
                m2: module_starts.1,
            });
        }
        Ok(Self {
            graph,
            module_starts,
            targets,
            start_joined,
        })
    }

    /// Parse the canonical JSON format:
    /// `{"nodes": N, "edges": [[u,v,w],...], "modules": [m1,m2],
    ///   "targets": [...], "start_joined": bool}`.
    ///
    /// `start_joined` defaults to true exactly when the starts coincide.
    pub fn from_json(s: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(s)?;
        let graph = WeightedGraph::new(file.nodes, &file.edges)?;
        let start_joined = file
            .start_joined
            .unwrap_or(file.modules.0 == file.modules.1);
        Instance::new(
            graph,
            file.modules,
            file.targets.into_iter().collect(),
            start_joined,
        )
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            nodes: self.graph.node_count(),
            edges: self.graph.edges(),
            modules: self.module_starts,
            targets: self.targets.iter().copied().collect(),
            start_joined: Some(self.start_joined),
        };
        serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
    }
}
