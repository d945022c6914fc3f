//! Attack strategies, sampled and exact robustness curves, and the `R` estimator.
//!
//! A strategy pairs a ranking [`Metric`] with a [`Mode`]: static attacks rank the
//! intact graph once, interactive attacks re-rank the residual graph after every
//! `batch` removals. Baselines are scored on their exact per-`Q` curve.

mod curve;
mod interactive;

use std::fmt;

pub use curve::{compute_r, materialize_step, merge_min, RobustnessCurve};

use crate::centrality::{
    betweenness_approx_until, betweenness_exact_until, collective_influence, degree_scores,
    pagerank_scores, rank_descending, PageRankParams, PivotSample, ScoreVector,
};
use crate::deadline::Deadline;
use crate::error::{Error, Result};
use crate::graph::{components_summary, sq_curve_full, Graph, RemovalState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    Degree,
    Betweenness,
    /// Pivot-sampled betweenness with the given pivot count.
    ApproxBetweenness {
        pivots: usize,
    },
    PageRank(PageRankParams),
    CollectiveInfluence {
        radius: usize,
    },
}

impl Metric {
    fn tag(&self) -> String {
        match self {
            Metric::Degree => "DEG".into(),
            Metric::Betweenness => "BET".into(),
            Metric::ApproxBetweenness { .. } => "ABET".into(),
            Metric::PageRank(_) => "PR".into(),
            Metric::CollectiveInfluence { radius } => format!("CI{radius}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Static,
    Interactive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategySpec {
    pub metric: Metric,
    pub mode: Mode,
    /// Removals between recomputations in interactive mode.
    pub batch: usize,
    /// Seeds pivot sampling; unused by deterministic metrics.
    pub seed: u64,
}

impl StrategySpec {
    pub fn new(metric: Metric, mode: Mode) -> Self {
        Self {
            metric,
            mode,
            batch: 1,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_batch(mut self, batch: usize) -> Self {
        self.batch = batch;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.metric {
            Metric::CollectiveInfluence { radius: 0 } => {
                return Err(Error::invalid("collective influence radius must be >= 1"))
            }
            Metric::ApproxBetweenness { pivots: 0 } => {
                return Err(Error::invalid("pivot count must be >= 1"))
            }
            Metric::PageRank(p) if !(p.damping > 0.0 && p.damping < 1.0) => {
                return Err(Error::invalid("damping must lie in (0, 1)"))
            }
            Metric::PageRank(p) if p.tolerance <= 0.0 => {
                return Err(Error::invalid("tolerance must be positive"))
            }
            _ => {}
        }
        if self.batch == 0 {
            return Err(Error::invalid("batch size must be >= 1"));
        }
        Ok(())
    }
}

/// Short name such as `DEG`, `IBET` or `ICI2`; interactive strategies carry an `I` prefix.
impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.mode {
            Mode::Static => "",
            Mode::Interactive => "I",
        };
        write!(f, "{prefix}{}", self.metric.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackSequence {
    pub order: Vec<usize>,
    pub origin: String,
}

/// Supplies node scores for the current residual graph. `step` counts the
/// recomputations performed so far in the attack.
pub trait RankingProvider {
    fn scores(&mut self, graph: &Graph, state: &RemovalState, step: usize) -> Result<ScoreVector>;
}

/// [`RankingProvider`] backed by a [`Metric`]. Sampled betweenness draws a fresh
/// pivot set per step from stream `step` of `seed`, clamped to the residual size.
#[derive(Debug, Clone)]
pub struct MetricProvider {
    pub metric: Metric,
    pub seed: u64,
    pub deadline: Deadline,
}

impl MetricProvider {
    pub fn new(metric: Metric, seed: u64) -> Self {
        Self {
            metric,
            seed,
            deadline: Deadline::none(),
        }
    }
}

impl RankingProvider for MetricProvider {
    fn scores(&mut self, graph: &Graph, state: &RemovalState, step: usize) -> Result<ScoreVector> {
        self.deadline.check()?;
        Ok(match self.metric {
            Metric::Degree => degree_scores(graph, state),
            Metric::Betweenness => betweenness_exact_until(graph, state, &self.deadline)?,
            Metric::ApproxBetweenness { pivots } => {
                let count = pivots.min(state.residual_count());
                let sample = PivotSample::draw_stream(state, count, self.seed, step as u64)?;
                betweenness_approx_until(graph, state, &sample, &self.deadline)?
            }
            Metric::PageRank(params) => pagerank_scores(graph, state, &params),
            Metric::CollectiveInfluence { radius } => collective_influence(graph, state, radius),
        })
    }
}

/// Ranks the intact graph once and attacks in that order.
pub fn static_attack(graph: &Graph, strategy: &StrategySpec) -> Result<AttackSequence> {
    static_attack_until(graph, strategy, &Deadline::none())
}

fn static_attack_until(
    graph: &Graph,
    strategy: &StrategySpec,
    deadline: &Deadline,
) -> Result<AttackSequence> {
    strategy.validate()?;
    let state = RemovalState::for_graph(graph);
    let mut provider = MetricProvider {
        metric: strategy.metric,
        seed: strategy.seed,
        deadline: *deadline,
    };
    let scores = provider.scores(graph, &state, 0)?;
    Ok(AttackSequence {
        order: rank_descending(&scores),
        origin: strategy.to_string(),
    })
}

/// Removes the top-ranked node(s) of the residual graph until nothing is left,
/// re-ranking after every `strategy.batch` removals.
pub fn interactive_attack(graph: &Graph, strategy: &StrategySpec) -> Result<AttackSequence> {
    interactive_attack_until(graph, strategy, &Deadline::none())
}

fn interactive_attack_until(
    graph: &Graph,
    strategy: &StrategySpec,
    deadline: &Deadline,
) -> Result<AttackSequence> {
    strategy.validate()?;
    let order = match (strategy.metric, strategy.batch) {
        (Metric::Degree, 1) => interactive::degree_order(graph),
        (Metric::Betweenness, 1) => interactive::betweenness_order(graph, deadline)?,
        _ => {
            let mut provider = MetricProvider {
                metric: strategy.metric,
                seed: strategy.seed,
                deadline: *deadline,
            };
            interactive::generic_order(graph, &mut provider, strategy.batch)?
        }
    };
    Ok(AttackSequence {
        order,
        origin: strategy.to_string(),
    })
}

/// Removal order produced while sampling, with the curve observed at each position.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledAttack {
    pub positions: Vec<usize>,
    pub gcs: Vec<f64>,
    pub order: Vec<usize>,
}

/// Walks the sample positions left to right. At the start of every sub-interval
/// the ranking is recomputed on the residual graph, then nodes are removed in
/// ranked order up to the interval's end, where the giant component is measured.
pub fn evaluate_samples<P: RankingProvider + ?Sized>(
    graph: &Graph,
    positions: &[usize],
    provider: &mut P,
) -> Result<SampledAttack> {
    let n = graph.node_count();
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(
            "sample positions must be strictly increasing",
        ));
    }
    if positions.first().is_some_and(|&p| p == 0) || positions.last().is_some_and(|&p| p > n) {
        return Err(Error::invalid(format!(
            "sample positions must lie in 1..={n}"
        )));
    }
    let mut state = RemovalState::for_graph(graph);
    let mut order = Vec::with_capacity(positions.last().copied().unwrap_or(0));
    let mut gcs = Vec::with_capacity(positions.len());
    for (interval, &end) in positions.iter().enumerate() {
        let scores = provider.scores(graph, &state, interval)?;
        let needed = end - state.removed_count();
        for v in rank_descending(&scores).into_iter().take(needed) {
            state.remove(v);
            order.push(v);
        }
        gcs.push(components_summary(graph, &state).gc_fraction);
    }
    Ok(SampledAttack {
        positions: positions.to_vec(),
        gcs,
        order,
    })
}

#[derive(Debug, Clone)]
pub struct StrategyOutcome {
    pub attack: AttackSequence,
    pub curve: RobustnessCurve,
}

/// Builds the strategy's full attack and scores it on the exact per-`Q` curve.
pub fn run_strategy(graph: &Graph, strategy: &StrategySpec) -> Result<StrategyOutcome> {
    run_strategy_until(graph, strategy, &Deadline::none())
}

pub fn run_strategy_until(
    graph: &Graph,
    strategy: &StrategySpec,
    deadline: &Deadline,
) -> Result<StrategyOutcome> {
    let attack = match strategy.mode {
        Mode::Static => static_attack_until(graph, strategy, deadline)?,
        Mode::Interactive => interactive_attack_until(graph, strategy, deadline)?,
    };
    let curve = RobustnessCurve::from_dense(sq_curve_full(graph, &attack.order)?);
    Ok(StrategyOutcome { attack, curve })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::load_edge_list;

    fn fig2() -> Graph {
        load_edge_list(
            "a c\nb c\nc d\nd e\ne f\nf g\nf h\ng i".as_bytes(),
            &Default::default(),
        )
        .unwrap()
    }

    fn star() -> Graph {
        Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn static_degree_on_star_hits_hub_first() {
        let s = static_attack(&star(), &StrategySpec::new(Metric::Degree, Mode::Static)).unwrap();
        assert_eq!(s.order, vec![0, 1, 2, 3, 4]);
        assert_eq!(s.origin, "DEG");
    }

    #[test]
    fn static_betweenness_targets_the_top_node() {
        let g = fig2();
        let s = static_attack(&g, &StrategySpec::new(Metric::Betweenness, Mode::Static)).unwrap();
        // Betweenness: f 17, e 16, d 15, c 13.
        let labels: Vec<&str> = s.order[..4].iter().map(|&v| g.label(v)).collect();
        assert_eq!(labels, ["f", "e", "d", "c"]);
    }

    #[test]
    fn static_betweenness_on_path_breaks_ties_by_id() {
        let s = static_attack(
            &path(3),
            &StrategySpec::new(Metric::Betweenness, Mode::Static),
        )
        .unwrap();
        assert_eq!(s.order, vec![1, 0, 2]);
    }

    #[test]
    fn interactive_betweenness_on_fig2() {
        let g = fig2();
        let ibet = StrategySpec::new(Metric::Betweenness, Mode::Interactive);
        let out = run_strategy(&g, &ibet).unwrap();
        assert_eq!(out.attack.origin, "IBET");
        // f first (betweenness 17), then c tops the {a..e} piece.
        assert_eq!(g.label(out.attack.order[0]), "f");
        assert_eq!(g.label(out.attack.order[1]), "c");
        assert!((out.curve.materialized[1] - 5.0 / 9.0).abs() < 1e-12);
        assert!((out.curve.materialized[2] - 2.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn ranking_prefixes_can_miss_the_best_pair() {
        let g = fig2();
        // Removing e (the balanced cut) first leaves a size-4 piece after any second removal.
        let e = 4;
        let best_with_e = (0..9)
            .filter(|&v| v != e)
            .map(|v| sq_curve_full(&g, &[e, v]).unwrap()[2])
            .fold(f64::INFINITY, f64::min);
        assert!((best_with_e - 4.0 / 9.0).abs() < 1e-12);
        let c_and_f = sq_curve_full(&g, &[1, 5]).unwrap();
        assert!((c_and_f[2] - 2.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn interactive_degree_on_star() {
        let out = interactive_attack(
            &star(),
            &StrategySpec::new(Metric::Degree, Mode::Interactive),
        )
        .unwrap();
        assert_eq!(out.order, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn complete_graph_is_strategy_independent() {
        let g = complete(4);
        let metrics = [
            Metric::Degree,
            Metric::Betweenness,
            Metric::ApproxBetweenness { pivots: 2 },
            Metric::PageRank(PageRankParams::default()),
            Metric::CollectiveInfluence { radius: 1 },
        ];
        for metric in metrics {
            for mode in [Mode::Static, Mode::Interactive] {
                let out = run_strategy(&g, &StrategySpec::new(metric, mode)).unwrap();
                assert_eq!(out.curve.materialized, vec![1.0, 0.75, 0.5, 0.25, 0.0]);
                assert!((out.curve.r - 3.0 / 8.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn star_r_closed_form() {
        let out = run_strategy(&star(), &StrategySpec::new(Metric::Degree, Mode::Static)).unwrap();
        assert!((out.curve.r - 0.16).abs() < 1e-15);
    }

    #[test]
    fn dense_sampling_equals_interactive_run() {
        let g = fig2();
        let positions: Vec<usize> = (1..=9).collect();
        let mut provider = MetricProvider::new(Metric::Betweenness, 0);
        let sampled = evaluate_samples(&g, &positions, &mut provider).unwrap();
        let run = run_strategy(
            &g,
            &StrategySpec::new(Metric::Betweenness, Mode::Interactive),
        )
        .unwrap();
        assert_eq!(sampled.order, run.attack.order);
        assert_eq!(sampled.gcs, run.curve.gcs);
    }

    #[test]
    fn sampled_star_and_path() {
        let mut provider = MetricProvider::new(Metric::Degree, 0);
        let star = evaluate_samples(&star(), &[2, 4], &mut provider).unwrap();
        assert_eq!(star.gcs, vec![0.2, 0.2]);
        let path = evaluate_samples(&path(4), &[2, 4], &mut provider).unwrap();
        assert_eq!(path.order[..2], [1, 2]);
        assert_eq!(path.gcs, vec![0.25, 0.0]);
    }

    #[test]
    fn sample_positions_are_validated() {
        let mut provider = MetricProvider::new(Metric::Degree, 0);
        assert!(evaluate_samples(&path(4), &[0, 2], &mut provider).is_err());
        assert!(evaluate_samples(&path(4), &[3, 2], &mut provider).is_err());
        assert!(evaluate_samples(&path(4), &[5], &mut provider).is_err());
    }

    #[test]
    fn invalid_strategies_rejected() {
        let g = star();
        let bad = [
            StrategySpec::new(Metric::CollectiveInfluence { radius: 0 }, Mode::Static),
            StrategySpec::new(Metric::ApproxBetweenness { pivots: 0 }, Mode::Interactive),
            StrategySpec::new(Metric::Degree, Mode::Interactive).with_batch(0),
            StrategySpec::new(
                Metric::PageRank(PageRankParams {
                    damping: 1.0,
                    ..Default::default()
                }),
                Mode::Static,
            ),
        ];
        for s in bad {
            assert!(run_strategy(&g, &s).is_err(), "{s:?}");
        }
    }

    #[test]
    fn descriptors() {
        let ci = StrategySpec::new(Metric::CollectiveInfluence { radius: 3 }, Mode::Interactive);
        assert_eq!(ci.to_string(), "ICI3");
        let pr = StrategySpec::new(Metric::PageRank(Default::default()), Mode::Static);
        assert_eq!(pr.to_string(), "PR");
    }

    #[test]
    fn expired_deadline_aborts() {
        let g = complete(30);
        let deadline = Deadline::after(std::time::Duration::ZERO);
        let s = StrategySpec::new(Metric::Betweenness, Mode::Interactive);
        assert!(matches!(
            run_strategy_until(&g, &s, &deadline),
            Err(Error::TimedOut)
        ));
    }
}
