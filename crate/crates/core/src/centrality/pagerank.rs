use super::ScoreVector;
use crate::graph::{Graph, RemovalState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankParams {
    pub damping: f64,
    /// Convergence threshold on the L1 change between iterations.
    pub tolerance: f64,
    pub max_iters: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tolerance: 1e-9,
            max_iters: 200,
        }
    }
}

/// PageRank by power iteration on the residual graph, each edge used in both
/// directions. Teleportation and the mass of isolated nodes are spread uniformly
/// over residual nodes, so the scores sum to one.
pub fn pagerank_scores(
    graph: &Graph,
    state: &RemovalState,
    params: &PageRankParams,
) -> ScoreVector {
    let n = graph.node_count();
    let residual: Vec<usize> = state.residual_nodes().collect();
    let mut rank = vec![0.0; n];
    if residual.is_empty() {
        return ScoreVector::masked(rank, state);
    }
    let share = 1.0 / residual.len() as f64;
    let degree: Vec<usize> = graph
        .nodes()
        .map(|v| {
            if state.is_removed(v) {
                0
            } else {
                graph.neighbors(v).filter(|&w| !state.is_removed(w)).count()
            }
        })
        .collect();
    for &v in &residual {
        rank[v] = share;
    }
    let mut next = vec![0.0; n];
    let d = params.damping;
    for _ in 0..params.max_iters {
        let dangling: f64 = residual
            .iter()
            .filter(|&&v| degree[v] == 0)
            .map(|&v| rank[v])
            .sum();
        let base = (1.0 - d) * share + d * dangling * share;
        for &v in &residual {
            let inflow: f64 = graph
                .neighbors(v)
                .filter(|&w| !state.is_removed(w))
                .map(|w| rank[w] / degree[w] as f64)
                .sum();
            next[v] = base + d * inflow;
        }
        let change: f64 = residual.iter().map(|&v| (next[v] - rank[v]).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if change <= params.tolerance {
            break;
        }
    }
    ScoreVector::masked(rank, state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_uniform() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let pr = pagerank_scores(&g, &RemovalState::for_graph(&g), &PageRankParams::default());
        for v in 0..4 {
            assert!((pr[v] - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn star_matches_closed_form() {
        // Fixed point of h = 0.03 + 3.4 l, l = 0.03 + 0.2125 h.
        let h = 0.132 / 0.2775;
        let l = 0.03 + 0.2125 * h;
        let g = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        let pr = pagerank_scores(&g, &RemovalState::for_graph(&g), &PageRankParams::default());
        assert!((pr[0] - h).abs() < 1e-8, "{}", pr[0]);
        for v in 1..5 {
            assert!((pr[v] - l).abs() < 1e-8);
        }
        assert!((h - 0.4757).abs() < 1e-4 && (l - 0.1311).abs() < 1e-4);
    }

    #[test]
    fn isolated_nodes_and_removals() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2)]).unwrap();
        let mut state = RemovalState::for_graph(&g);
        state.remove(1);
        let params = PageRankParams::default();
        let pr = pagerank_scores(&g, &state, &params);
        assert_eq!(pr[1], f64::NEG_INFINITY);
        let total: f64 = [0, 2, 3, 4].iter().map(|&v| pr[v]).sum();
        assert!((total - 1.0).abs() < params.tolerance);
        assert!((pr[0] - 0.25).abs() < 1e-12);
    }
}
