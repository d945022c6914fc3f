//! Brandes dependency accumulation, over all sources or a sampled pivot set.

use std::cell::RefCell;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ScoreVector;
use crate::deadline::Deadline;
use crate::error::{Error, Result};
use crate::graph::{Graph, RemovalState};

/// Sources handled between deadline checks and per parallel batch.
const SOURCE_BATCH: usize = 64;

/// Path count and dependency of one node, adjacent in memory because the
/// backward pass reads and writes both.
#[derive(Clone, Copy, Default)]
struct Paths {
    sigma: f64,
    delta: f64,
}

/// Single-source BFS state. Only entries touched by the last run are dirty,
/// and they are reset at the start of the next run.
#[derive(Default)]
struct Workspace {
    dist: Vec<i32>,
    paths: Vec<Paths>,
    order: Vec<u32>,
}

impl Workspace {
    fn prepare(&mut self, n: usize) {
        for &v in &self.order {
            self.dist[v as usize] = -1;
            self.paths[v as usize] = Paths::default();
        }
        self.order.clear();
        if self.dist.len() != n {
            self.dist = vec![-1; n];
            self.paths = vec![Paths::default(); n];
        }
    }

    /// Fills `order` with the nodes reachable from `source` in BFS order and
    /// `paths[v].delta` with the dependency of `source` on each of them.
    fn run(&mut self, graph: &Graph, state: &RemovalState, source: usize) {
        self.prepare(graph.node_count());
        let (dist, paths) = (&mut self.dist, &mut self.paths);
        dist[source] = 0;
        paths[source].sigma = 1.0;
        self.order.push(source as u32);
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head] as usize;
            head += 1;
            let next = dist[v] + 1;
            let sigma = paths[v].sigma;
            for w in graph.neighbors(v) {
                if dist[w] < 0 {
                    if state.is_removed(w) {
                        continue;
                    }
                    dist[w] = next;
                    self.order.push(w as u32);
                }
                if dist[w] == next {
                    paths[w].sigma += sigma;
                }
            }
        }
        for i in (1..self.order.len()).rev() {
            let w = self.order[i] as usize;
            let prev = dist[w] - 1;
            let coeff = (1.0 + paths[w].delta) / paths[w].sigma;
            for v in graph.neighbors(w) {
                // Removed nodes are never reached, so their dist stays -1.
                if dist[v] == prev {
                    paths[v].delta += paths[v].sigma * coeff;
                }
            }
        }
    }

    fn delta(&self, v: u32) -> f64 {
        self.paths[v as usize].delta
    }
}

thread_local! {
    static WORKSPACE: RefCell<Workspace> = RefCell::new(Workspace::default());
}

fn dependencies(graph: &Graph, state: &RemovalState, source: usize) -> Vec<(u32, f64)> {
    WORKSPACE.with(|ws| {
        let mut ws = ws.borrow_mut();
        ws.run(graph, state, source);
        ws.order[1..].iter().map(|&v| (v, ws.delta(v))).collect()
    })
}

/// Sum over `sources` of the single-source dependencies `δ_s(v)`.
///
/// Sources are added into the accumulator strictly in slice order, so the result
/// is bit-identical for any thread count.
pub(crate) fn dependency_sum(
    graph: &Graph,
    state: &RemovalState,
    sources: &[usize],
    deadline: &Deadline,
) -> Result<Vec<f64>> {
    let mut total = vec![0.0; graph.node_count()];
    let parallel = rayon::current_num_threads() > 1;
    for batch in sources.chunks(SOURCE_BATCH) {
        deadline.check()?;
        if parallel {
            let partials: Vec<Vec<(u32, f64)>> = batch
                .par_iter()
                .map(|&s| dependencies(graph, state, s))
                .collect();
            for partial in partials {
                for (v, d) in partial {
                    total[v as usize] += d;
                }
            }
        } else {
            WORKSPACE.with(|ws| {
                let mut ws = ws.borrow_mut();
                for &s in batch {
                    ws.run(graph, state, s);
                    for &v in &ws.order[1..] {
                        total[v as usize] += ws.delta(v);
                    }
                }
            });
        }
    }
    Ok(total)
}

/// Unnormalized shortest-path betweenness of the residual graph, counting each
/// unordered pair once.
pub fn betweenness_exact(graph: &Graph, state: &RemovalState) -> ScoreVector {
    betweenness_exact_until(graph, state, &Deadline::none()).expect("no deadline")
}

pub(crate) fn betweenness_exact_until(
    graph: &Graph,
    state: &RemovalState,
    deadline: &Deadline,
) -> Result<ScoreVector> {
    let sources: Vec<usize> = state.residual_nodes().collect();
    let mut total = dependency_sum(graph, state, &sources, deadline)?;
    for s in &mut total {
        *s *= 0.5;
    }
    Ok(ScoreVector::masked(total, state))
}

/// Distinct non-removed source nodes for sampled betweenness, in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotSample {
    pivots: Vec<usize>,
    seed: u64,
}

impl PivotSample {
    /// Draws `count` pivots uniformly without replacement from the residual nodes.
    pub fn draw(state: &RemovalState, count: usize, seed: u64) -> Result<PivotSample> {
        Self::draw_stream(state, count, seed, 0)
    }

    /// Like [`draw`](Self::draw) on an independent random stream of the same seed.
    pub fn draw_stream(
        state: &RemovalState,
        count: usize,
        seed: u64,
        stream: u64,
    ) -> Result<PivotSample> {
        let residual: Vec<usize> = state.residual_nodes().collect();
        if count == 0 || count > residual.len() {
            return Err(Error::invalid(format!(
                "pivot count {count} must be in 1..={}",
                residual.len()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut pivots: Vec<usize> = rand::seq::index::sample(&mut rng, residual.len(), count)
            .into_iter()
            .map(|i| residual[i])
            .collect();
        pivots.sort_unstable();
        Ok(PivotSample { pivots, seed })
    }

    /// An explicit pivot set; nodes must be distinct and not removed.
    pub fn from_nodes(state: &RemovalState, mut nodes: Vec<usize>) -> Result<PivotSample> {
        nodes.sort_unstable();
        if nodes.is_empty() {
            return Err(Error::invalid("empty pivot set"));
        }
        for pair in nodes.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateNode { node: pair[0] });
            }
        }
        if let Some(&v) = nodes
            .iter()
            .find(|&&v| v >= state.node_count() || state.is_removed(v))
        {
            return Err(Error::invalid(format!("pivot {v} is not a residual node")));
        }
        Ok(PivotSample {
            pivots: nodes,
            seed: 0,
        })
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Betweenness estimated from the shortest-path trees of the pivots only.
///
/// Dependencies are scaled by `residual / (2 * pivots)`, which makes the estimate
/// unbiased for [`betweenness_exact`] under uniform pivot sampling.
pub fn betweenness_approx(
    graph: &Graph,
    state: &RemovalState,
    sample: &PivotSample,
) -> Result<ScoreVector> {
    betweenness_approx_until(graph, state, sample, &Deadline::none())
}

pub(crate) fn betweenness_approx_until(
    graph: &Graph,
    state: &RemovalState,
    sample: &PivotSample,
    deadline: &Deadline,
) -> Result<ScoreVector> {
    let residual = state.residual_count();
    if sample.len() > residual {
        return Err(Error::invalid(format!(
            "{} pivots exceed {residual} residual nodes",
            sample.len()
        )));
    }
    if let Some(&v) = sample.pivots.iter().find(|&&v| state.is_removed(v)) {
        return Err(Error::invalid(format!("pivot {v} has been removed")));
    }
    let mut total = dependency_sum(graph, state, &sample.pivots, deadline)?;
    let scale = residual as f64 / (2.0 * sample.len() as f64);
    for s in &mut total {
        *s *= scale;
    }
    Ok(ScoreVector::masked(total, state))
}
