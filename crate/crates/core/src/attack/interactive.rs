//! Interactive attack loops.
//!
//! The degree and betweenness loops are incremental versions of
//! [`generic_order`] and must produce exactly the same order.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use super::RankingProvider;
use crate::centrality::{dependency_sum, rank_descending};
use crate::deadline::Deadline;
use crate::error::Result;
use crate::graph::{Graph, RemovalState};

/// Recompute, remove the top `batch` nodes, repeat.
pub(super) fn generic_order<P: RankingProvider + ?Sized>(
    graph: &Graph,
    provider: &mut P,
    batch: usize,
) -> Result<Vec<usize>> {
    let mut state = RemovalState::for_graph(graph);
    let mut order = Vec::with_capacity(graph.node_count());
    let mut step = 0;
    while state.residual_count() > 0 {
        let scores = provider.scores(graph, &state, step)?;
        for v in rank_descending(&scores).into_iter().take(batch) {
            state.remove(v);
            order.push(v);
        }
        step += 1;
    }
    Ok(order)
}

/// Interactive degree with a priority set keyed on (residual degree desc, id asc).
pub(super) fn degree_order(graph: &Graph) -> Vec<usize> {
    let mut degree: Vec<usize> = graph.nodes().map(|v| graph.degree(v)).collect();
    let mut queue: BTreeSet<(Reverse<usize>, usize)> =
        graph.nodes().map(|v| (Reverse(degree[v]), v)).collect();
    let mut removed = vec![false; graph.node_count()];
    let mut order = Vec::with_capacity(graph.node_count());
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        order.push(v);
        for w in graph.neighbors(v) {
            if !removed[w] {
                queue.remove(&(Reverse(degree[w]), w));
                degree[w] -= 1;
                queue.insert((Reverse(degree[w]), w));
            }
        }
    }
    order
}

/// Interactive exact betweenness. Removing a node only changes scores inside
/// its own component, so only the pieces that component splits into are
/// recomputed. Sources are accumulated in ascending id order as in a full
/// recomputation, which keeps the scores bit-identical.
pub(super) fn betweenness_order(graph: &Graph, deadline: &Deadline) -> Result<Vec<usize>> {
    let n = graph.node_count();
    let mut state = RemovalState::for_graph(graph);
    let all: Vec<usize> = graph.nodes().collect();
    let mut scores = dependency_sum(graph, &state, &all, deadline)?;
    for s in &mut scores {
        *s *= 0.5;
    }

    let mut order = Vec::with_capacity(n);
    let mut mark = vec![usize::MAX; n];
    let mut stack = Vec::new();
    for step in 0..n {
        deadline.check()?;
        let mut best = usize::MAX;
        for v in 0..n {
            if !state.is_removed(v) && (best == usize::MAX || scores[v] > scores[best]) {
                best = v;
            }
        }
        state.remove(best);
        order.push(best);

        // Nodes of the component that contained `best`, minus `best` itself.
        let mut affected = Vec::new();
        for w in graph.neighbors(best) {
            if state.is_removed(w) || mark[w] == step {
                continue;
            }
            mark[w] = step;
            stack.push(w);
            while let Some(x) = stack.pop() {
                affected.push(x);
                for y in graph.neighbors(x) {
                    if !state.is_removed(y) && mark[y] != step {
                        mark[y] = step;
                        stack.push(y);
                    }
                }
            }
        }
        if affected.is_empty() {
            continue;
        }
        affected.sort_unstable();
        let partial = dependency_sum(graph, &state, &affected, deadline)?;
        for &v in &affected {
            scores[v] = partial[v] * 0.5;
        }
    }
    Ok(order)
}
