//! Node-ranking metrics evaluated on the residual graph.
//!
//! Every metric returns a [`ScoreVector`] with one entry per node of the original
//! graph. Removed nodes carry `f64::NEG_INFINITY` so they never appear in a ranking.

mod betweenness;
mod influence;
mod pagerank;

pub use betweenness::{betweenness_approx, betweenness_exact, PivotSample};
pub(crate) use betweenness::{betweenness_approx_until, betweenness_exact_until, dependency_sum};
pub use influence::collective_influence;
pub use pagerank::{pagerank_scores, PageRankParams};

use crate::graph::{Graph, RemovalState};

/// Score of a removed node.
pub const REMOVED: f64 = f64::NEG_INFINITY;

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector(Vec<f64>);

impl ScoreVector {
    pub fn new(scores: Vec<f64>) -> Self {
        ScoreVector(scores)
    }

    pub(crate) fn masked(mut scores: Vec<f64>, state: &RemovalState) -> Self {
        for (v, s) in scores.iter_mut().enumerate() {
            if state.is_removed(v) {
                *s = REMOVED;
            }
        }
        ScoreVector(scores)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Index<usize> for ScoreVector {
    type Output = f64;

    fn index(&self, v: usize) -> &f64 {
        &self.0[v]
    }
}

/// Residual degree of every non-removed node.
pub fn degree_scores(graph: &Graph, state: &RemovalState) -> ScoreVector {
    let scores = graph
        .nodes()
        .map(|v| {
            if state.is_removed(v) {
                REMOVED
            } else {
                graph.neighbors(v).filter(|&w| !state.is_removed(w)).count() as f64
            }
        })
        .collect();
    ScoreVector(scores)
}

/// Non-removed node ids by descending score, ties broken by ascending id.
pub fn rank_descending(scores: &ScoreVector) -> Vec<usize> {
    let s = scores.as_slice();
    let mut order: Vec<usize> = (0..s.len()).filter(|&v| s[v] != REMOVED).collect();
    order.sort_by(|&a, &b| s[b].total_cmp(&s[a]).then(a.cmp(&b)));
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn star() -> Graph {
        Graph::from_edges(5, (1..5).map(|l| (0, l))).unwrap()
    }

    #[test]
    fn star_degrees() {
        let g = star();
        let mut state = RemovalState::for_graph(&g);
        assert_eq!(
            degree_scores(&g, &state).as_slice(),
            &[4.0, 1.0, 1.0, 1.0, 1.0]
        );
        state.remove(0);
        assert_eq!(
            degree_scores(&g, &state).as_slice(),
            &[REMOVED, 0.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn ranking_breaks_ties_by_id() {
        assert_eq!(
            rank_descending(&ScoreVector::new(vec![3.0, 5.0, 3.0])),
            vec![1, 0, 2]
        );
        assert_eq!(
            rank_descending(&ScoreVector::new(vec![1.0; 4])),
            vec![0, 1, 2, 3]
        );
        assert_eq!(
            rank_descending(&ScoreVector::new(vec![2.0, REMOVED, 7.0])),
            vec![2, 0]
        );
    }

    proptest! {
        #[test]
        fn ranking_is_a_shift_invariant_permutation(
            scores in prop::collection::vec(prop_oneof![Just(REMOVED), 0.0f64..10.0, Just(1.0)], 0..40),
            shift in 0.5f64..100.0,
        ) {
            let ranked = rank_descending(&ScoreVector::new(scores.clone()));
            let mut sorted = ranked.clone();
            sorted.sort_unstable();
            let live: Vec<usize> = (0..scores.len()).filter(|&v| scores[v] != REMOVED).collect();
            prop_assert_eq!(sorted, live);
            for pair in ranked.windows(2) {
                prop_assert!(scores[pair[0]] >= scores[pair[1]]);
            }
            // Shifting changes float rounding, so compare against integers-valued scores.
            let rounded: Vec<f64> = scores.iter().map(|s| if *s == REMOVED { REMOVED } else { s.floor() }).collect();
            let shifted: Vec<f64> = rounded.iter().map(|s| s + shift.floor()).collect();
            prop_assert_eq!(
                rank_descending(&ScoreVector::new(rounded)),
                rank_descending(&ScoreVector::new(shifted))
            );
        }
    }
}
