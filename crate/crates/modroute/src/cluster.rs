//! Two-way clustering of targets under the graph metric.
//!
//! Graph nodes carry no coordinates, so the partition is a deterministic
//! 2-medoids iteration under shortest-path distance, scored by a
//! Davies-Bouldin style index with medoids in place of centroids.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::DistanceOracle;

/// Two-way partition of a target set with its medoids and separation score.
#[derive(Debug, Clone)]
pub struct ClusterSplit {
    pub cluster1: BTreeSet<usize>,
    pub cluster2: BTreeSet<usize>,
    pub medoid1: usize,
    pub medoid2: usize,
    /// (mean spread of cluster 1 + mean spread of cluster 2) / medoid distance.
    pub db_index: f64,
    /// Assignment/update rounds until the fixed point.
    pub iterations: usize,
}

fn medoid_of(oracle: &DistanceOracle, members: &BTreeSet<usize>) -> usize {
    let mut best: Option<(f64, usize)> = None;
    for &cand in members {
        let sum: f64 = members.iter().map(|&m| oracle.dist(cand, m)).sum();
        match best {
            Some((b, _)) if sum >= b => {}
            _ => best = Some((sum, cand)),
        }
    }
    best.expect("cluster is nonempty").1
}

fn mean_spread(oracle: &DistanceOracle, members: &BTreeSet<usize>, medoid: usize) -> f64 {
    members.iter().map(|&m| oracle.dist(medoid, m)).sum::<f64>() / members.len() as f64
}

/// Partition `targets` into two clusters by deterministic 2-medoids.
///
/// Medoids initialize to the pair of targets at maximal distance (ties to
/// the smallest id pair); assignment sends each target to the nearer medoid
/// (ties to the smaller medoid id); the medoid update picks the member
/// minimizing the intra-cluster distance sum (ties to the smallest id).
pub fn cluster_two(oracle: &DistanceOracle, targets: &BTreeSet<usize>) -> Result<ClusterSplit> {
    if targets.len() < 2 {
        return Err(Error::TooFewTargets(targets.len()));
    }
    let ts: Vec<usize> = targets.iter().copied().collect();

    // Farthest-pair initialization; ascending iteration with strict `>`
    // keeps the smallest pair on ties.
    let mut init: Option<(f64, usize, usize)> = None;
    for (i, &u) in ts.iter().enumerate() {
        for &v in &ts[i + 1..] {
            let d = oracle.dist(u, v);
            if init.is_none_or(|(b, _, _)| d > b) {
                init = Some((d, u, v));
            }
        }
    }
    let (_, mut mu1, mut mu2) = init.expect("at least two targets");

    let mut cluster1 = BTreeSet::new();
    let mut cluster2 = BTreeSet::new();
    let mut iterations = 0;
    // Every change strictly decreases the intra-cluster distance sum, so the
    // loop reaches a fixed point; the cap is a hard safety bound.
    for _ in 0..(ts.len() * ts.len() + 2) {
        iterations += 1;
        let mut c1 = BTreeSet::new();
        let mut c2 = BTreeSet::new();
        for &t in &ts {
            let (d1, d2) = (oracle.dist(t, mu1), oracle.dist(t, mu2));
            let to_first = if d1 < d2 {
                true
            } else if d2 < d1 {
                false
            } else {
                mu1 < mu2
            };
            if to_first {
                c1.insert(t);
            } else {
                c2.insert(t);
            }
        }
        let (n1, n2) = (medoid_of(oracle, &c1), medoid_of(oracle, &c2));
        let converged = c1 == cluster1 && c2 == cluster2 && n1 == mu1 && n2 == mu2;
        cluster1 = c1;
        cluster2 = c2;
        mu1 = n1;
        mu2 = n2;
        if converged {
            break;
        }
    }

    // Canonical order: cluster 1 carries the smaller medoid.
    if mu2 < mu1 {
        std::mem::swap(&mut mu1, &mut mu2);
        std::mem::swap(&mut cluster1, &mut cluster2);
    }

    let sigma1 = mean_spread(oracle, &cluster1, mu1);
    let sigma2 = mean_spread(oracle, &cluster2, mu2);
    let db_index = (sigma1 + sigma2) / oracle.dist(mu1, mu2);

    Ok(ClusterSplit {
        cluster1,
        cluster2,
        medoid1: mu1,
        medoid2: mu2,
        db_index,
        iterations,
    })
}

/// The cluster whose medoid is nearer to `from`; ties go to the cluster
/// containing the smaller medoid id.
pub fn nearer_cluster<'a>(
    oracle: &DistanceOracle,
    split: &'a ClusterSplit,
    from: usize,
) -> &'a BTreeSet<usize> {
    let d1 = oracle.dist(from, split.medoid1);
    let d2 = oracle.dist(from, split.medoid2);
    if d1 < d2 || (d1 == d2 && split.medoid1 < split.medoid2) {
        &split.cluster1
    } else {
        &split.cluster2
    }
}
