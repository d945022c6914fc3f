//! Quick robustness estimation.
//!
//! Stage one splits `[0, N]` into `X` equal-length intervals and attacks by
//! residual degree, recomputed at the start of each interval; the sampled giant
//! component sizes give a step function and a first estimate of `R`.
//!
//! Stage two is repeated `Z` times. It places `X` interval boundaries at equal
//! drops of the best curve found so far (equi-depth), attacks by pivot-sampled
//! betweenness with `Y` fresh pivots per interval, and keeps the pointwise
//! minimum of the new step function and the best one. `R` can only decrease.

use crate::attack::{
    compute_r, evaluate_samples, materialize_step, merge_min, Metric, MetricProvider,
};
use crate::deadline::Deadline;
use crate::error::{Error, Result};
use crate::graph::{components_summary, Graph, RemovalState};

/// How `Y` and `Z` are derived when not given explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// `max(2, round(sqrt(ln N)))`.
    PaperLiteral,
    /// `max(8, ceil(log2 N))`.
    #[default]
    Scaled,
}

impl PivotRule {
    pub fn count(self, n: usize) -> usize {
        let n = n.max(1) as f64;
        match self {
            PivotRule::PaperLiteral => (n.ln().sqrt().round() as usize).max(2),
            PivotRule::Scaled => (n.log2().ceil() as usize).max(8),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QreParams {
    /// Number of sub-intervals `X` in both stages.
    pub intervals: usize,
    /// Pivots per interval `Y`; derived from `rule` when `None`.
    pub pivots: Option<usize>,
    /// Refinement iterations `Z`; derived from `rule` when `None`.
    pub iterations: Option<usize>,
    pub seed: u64,
    pub rule: PivotRule,
}

impl Default for QreParams {
    fn default() -> Self {
        Self {
            intervals: 100,
            pivots: None,
            iterations: None,
            seed: 0,
            rule: PivotRule::Scaled,
        }
    }
}

/// Concrete `X`, `Y`, `Z` for a graph of a given size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedParams {
    pub intervals: usize,
    pub pivots: usize,
    pub iterations: usize,
}

impl QreParams {
    /// Applies the pivot rule and clamps `X` and `Y` to `N`.
    pub fn resolve(&self, n: usize) -> Result<ResolvedParams> {
        if n == 0 {
            return Err(Error::invalid("graph has no nodes"));
        }
        if self.intervals == 0 {
            return Err(Error::invalid("interval count X must be >= 1"));
        }
        if self.pivots == Some(0) {
            return Err(Error::invalid("pivot count Y must be >= 1"));
        }
        let derived = self.rule.count(n);
        Ok(ResolvedParams {
            intervals: self.intervals.min(n),
            pivots: self.pivots.unwrap_or(derived).min(n),
            iterations: self.iterations.unwrap_or(derived),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QreState {
    /// Pointwise best giant-component fraction over `Q = 0..=N`.
    pub best_materialized: Vec<f64>,
    pub best_r: f64,
    /// `R` after stage one, then after every refinement iteration.
    pub history: Vec<f64>,
}

/// `round(i * N / X)` for `i = 1..=X`, without zeros or repeats.
pub fn equi_length_positions(n: usize, intervals: usize) -> Vec<usize> {
    let mut positions: Vec<usize> = (1..=intervals)
        .map(|i| (2 * i * n + intervals) / (2 * intervals))
        .filter(|&p| p > 0)
        .collect();
    positions.dedup();
    positions
}

/// Boundaries splitting the curve's drop from `materialized[0]` to zero into `X`
/// equal parts: `p_k` is the first `Q` whose value is at most
/// `materialized[0] * (1 - k/X)`. Always ends with `N`.
pub fn equi_depth_boundaries(materialized: &[f64], intervals: usize) -> Vec<usize> {
    let n = materialized.len() - 1;
    let top = materialized[0];
    let mut positions = Vec::with_capacity(intervals + 1);
    let mut q = 0;
    for k in 1..=intervals {
        let level = top * (intervals - k) as f64 / intervals as f64;
        while q < n && materialized[q] > level + 1e-12 {
            q += 1;
        }
        if q == 0 {
            continue;
        }
        if positions.last() != Some(&q) {
            positions.push(q);
        }
    }
    if positions.last() != Some(&n) && n > 0 {
        positions.push(n);
    }
    positions
}

/// Equal-length intervals attacked by residual degree.
pub fn stage1_degree_shaping(graph: &Graph, intervals: usize) -> Result<QreState> {
    stage1_until(graph, intervals, &Deadline::none())
}

fn stage1_until(graph: &Graph, intervals: usize, deadline: &Deadline) -> Result<QreState> {
    let n = graph.node_count();
    if n == 0 || intervals == 0 {
        return Err(Error::invalid("stage one needs N >= 1 and X >= 1"));
    }
    let positions = equi_length_positions(n, intervals.min(n));
    let mut provider = MetricProvider {
        metric: Metric::Degree,
        seed: 0,
        deadline: *deadline,
    };
    let sampled = evaluate_samples(graph, &positions, &mut provider)?;
    let intact = intact_fraction(graph);
    let best_materialized = materialize_step(&sampled.positions, &sampled.gcs, n, intact)?;
    let best_r = compute_r(&best_materialized, n);
    Ok(QreState {
        best_materialized,
        best_r,
        history: vec![best_r],
    })
}

fn intact_fraction(graph: &Graph) -> f64 {
    components_summary(graph, &RemovalState::for_graph(graph)).gc_fraction
}

/// One refinement pass with pivot-sampled betweenness on equi-depth intervals.
/// Interval `i` draws its pivots from stream `i` of `iteration_seed`.
pub fn stage2_iteration(
    graph: &Graph,
    state: QreState,
    intervals: usize,
    pivots: usize,
    iteration_seed: u64,
) -> Result<QreState> {
    stage2_until(
        graph,
        state,
        intervals,
        pivots,
        iteration_seed,
        &Deadline::none(),
    )
}

fn stage2_until(
    graph: &Graph,
    mut state: QreState,
    intervals: usize,
    pivots: usize,
    iteration_seed: u64,
    deadline: &Deadline,
) -> Result<QreState> {
    let n = graph.node_count();
    if state.best_materialized.len() != n + 1 {
        return Err(Error::LengthMismatch {
            expected: n + 1,
            actual: state.best_materialized.len(),
        });
    }
    if pivots == 0 || intervals == 0 {
        return Err(Error::invalid("stage two needs X >= 1 and Y >= 1"));
    }
    let positions = equi_depth_boundaries(&state.best_materialized, intervals);
    let mut provider = MetricProvider {
        metric: Metric::ApproxBetweenness { pivots },
        seed: iteration_seed,
        deadline: *deadline,
    };
    let sampled = evaluate_samples(graph, &positions, &mut provider)?;
    let fresh = materialize_step(
        &sampled.positions,
        &sampled.gcs,
        n,
        state.best_materialized[0],
    )?;
    state.best_materialized = merge_min(&state.best_materialized, &fresh)?;
    state.best_r = compute_r(&state.best_materialized, n);
    state.history.push(state.best_r);
    Ok(state)
}

/// Stage one followed by `Z` refinement iterations seeded `seed + 1 ..= seed + Z`.
pub fn qre_estimate(graph: &Graph, params: &QreParams) -> Result<QreState> {
    qre_estimate_until(graph, params, &Deadline::none())
}

pub fn qre_estimate_until(
    graph: &Graph,
    params: &QreParams,
    deadline: &Deadline,
) -> Result<QreState> {
    let resolved = params.resolve(graph.node_count())?;
    let mut state = stage1_until(graph, resolved.intervals, deadline)?;
    for j in 1..=resolved.iterations as u64 {
        state = stage2_until(
            graph,
            state,
            resolved.intervals,
            resolved.pivots,
            params.seed.wrapping_add(j),
            deadline,
        )?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::{complete_graph, star_graph};

    #[test]
    fn star_stage_one_dense() {
        let state = stage1_degree_shaping(&star_graph(5), 5).unwrap();
        assert_eq!(state.best_materialized, vec![1.0, 0.2, 0.2, 0.2, 0.2, 0.0]);
        assert!((state.best_r - 0.16).abs() < 1e-15);
        assert_eq!(state.history.len(), 1);
    }

    #[test]
    fn equi_length_rounding() {
        assert_eq!(equi_length_positions(10, 2), vec![5, 10]);
        assert_eq!(equi_length_positions(5, 5), vec![1, 2, 3, 4, 5]);
        assert_eq!(equi_length_positions(10, 4), vec![3, 5, 8, 10]);
        assert_eq!(equi_length_positions(3, 100).last(), Some(&3));
    }

    #[test]
    fn complete_graph_stage_one() {
        let state = stage1_degree_shaping(&complete_graph(4), 4).unwrap();
        assert!((state.best_r - 3.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn equi_depth_on_linear_curve() {
        let curve: Vec<f64> = (0..=8).map(|q| 1.0 - q as f64 / 8.0).collect();
        assert_eq!(equi_depth_boundaries(&curve, 4), vec![2, 4, 6, 8]);
    }

    #[test]
    fn equi_depth_on_plateau() {
        let curve = [1.0, 1.0, 1.0, 0.1, 0.1, 0.0];
        assert_eq!(equi_depth_boundaries(&curve, 2), vec![3, 5]);
    }

    #[test]
    fn equi_depth_collapsed_curve() {
        let curve = [1.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(equi_depth_boundaries(&curve, 3), vec![1, 4]);
    }

    #[test]
    fn stage_two_on_complete_graph_changes_nothing() {
        let g = complete_graph(4);
        let before = stage1_degree_shaping(&g, 4).unwrap();
        let after = stage2_iteration(&g, before.clone(), 4, 4, 1).unwrap();
        assert_eq!(after.best_materialized, before.best_materialized);
        assert_eq!(after.best_r, before.best_r);
        assert_eq!(after.history.len(), 2);
    }

    #[test]
    fn zero_iterations_is_stage_one() {
        let g = crate::netgen::generate_ba(60, 2, 4).unwrap();
        let params = QreParams {
            iterations: Some(0),
            ..Default::default()
        };
        let full = qre_estimate(&g, &params).unwrap();
        assert_eq!(full, stage1_degree_shaping(&g, 60).unwrap());
    }

    #[test]
    fn pivot_rules() {
        assert_eq!(PivotRule::Scaled.count(62), 8);
        assert_eq!(PivotRule::Scaled.count(1_000_000), 20);
        assert_eq!(PivotRule::PaperLiteral.count(62), 2);
        assert_eq!(PivotRule::PaperLiteral.count(1_000_000), 4);
    }

    #[test]
    fn resolve_clamps_and_validates() {
        let r = QreParams::default().resolve(9).unwrap();
        assert_eq!(
            r,
            ResolvedParams {
                intervals: 9,
                pivots: 8,
                iterations: 8
            }
        );
        let r = QreParams {
            pivots: Some(50),
            ..Default::default()
        }
        .resolve(9)
        .unwrap();
        assert_eq!(r.pivots, 9);
        assert!(QreParams {
            intervals: 0,
            ..Default::default()
        }
        .resolve(9)
        .is_err());
        assert!(QreParams {
            pivots: Some(0),
            ..Default::default()
        }
        .resolve(9)
        .is_err());
        assert!(QreParams::default().resolve(0).is_err());
    }

    #[test]
    fn stage_two_rejects_mismatched_state() {
        let g = complete_graph(4);
        let state = stage1_degree_shaping(&star_graph(6), 6).unwrap();
        assert!(stage2_iteration(&g, state, 4, 2, 0).is_err());
    }
}
