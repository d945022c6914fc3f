use super::ScoreVector;
use crate::graph::{Graph, RemovalState};

/// Collective influence `CI_l(i) = (k_i - 1) * sum over j at distance exactly l
/// of (k_j - 1)`, with residual degrees and residual distances. Nodes of residual
/// degree at most one score zero.
pub fn collective_influence(graph: &Graph, state: &RemovalState, radius: usize) -> ScoreVector {
    assert!(radius >= 1, "ball radius must be at least 1");
    let n = graph.node_count();
    let degree: Vec<u64> = graph
        .nodes()
        .map(|v| {
            if state.is_removed(v) {
                0
            } else {
                graph.neighbors(v).filter(|&w| !state.is_removed(w)).count() as u64
            }
        })
        .collect();

    let mut stamp = vec![usize::MAX; n];
    let mut frontier = Vec::new();
    let mut next = Vec::new();
    let mut scores = vec![0.0; n];
    for i in graph.nodes() {
        if state.is_removed(i) || degree[i] <= 1 {
            continue;
        }
        stamp[i] = i;
        frontier.clear();
        frontier.push(i);
        for _ in 0..radius {
            next.clear();
            for &v in &frontier {
                for w in graph.neighbors(v) {
                    if !state.is_removed(w) && stamp[w] != i {
                        stamp[w] = i;
                        next.push(w);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            if frontier.is_empty() {
                break;
            }
        }
        let boundary: u64 = frontier.iter().map(|&j| degree[j].saturating_sub(1)).sum();
        scores[i] = ((degree[i] - 1) * boundary) as f64;
    }
    ScoreVector::masked(scores, state)
}
