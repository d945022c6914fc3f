//! Immutable undirected simple graphs, removal overlays and giant-component
//! evaluation.
//!
//! Nodes are dense ids `0..N`. Every [`Graph`] keeps a label per node holding the
//! token it was read from, so results can be mapped back to source ids.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::union_find::DisjointSets;

/// Undirected simple graph in compressed sparse row form.
///
/// Neighbor lists are sorted, symmetric and free of self-loops and duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<u32>,
    targets: Vec<u32>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph on `node_count` nodes labelled `"0".."N-1"`.
    ///
    /// Self-loops and repeated edges (in either direction) are dropped.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut builder = GraphBuilder::with_numbered_nodes(node_count);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= node_count {
                    return Err(Error::NodeOutOfRange {
                        node: w,
                        node_count,
                    });
                }
            }
            builder.add_edge(u, v);
        }
        Ok(builder.build())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
            .iter()
            .map(|&w| w as usize)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let adj = &self.targets[self.offsets[u] as usize..self.offsets[u + 1] as usize];
        adj.binary_search(&(v as u32)).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.node_count()
    }
}

/// Accumulates labelled nodes and edges, then freezes them into a [`Graph`].
///
/// Labels are assigned dense ids in first-appearance order.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    ids: HashMap<String, usize>,
    labels: Vec<String>,
    edges: Vec<(u32, u32)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// A builder whose first `n` nodes are pre-registered with labels `"0".."n-1"`.
    pub fn with_numbered_nodes(n: usize) -> Self {
        let mut builder = Self::new();
        for i in 0..n {
            builder.intern(&i.to_string());
        }
        builder
    }

    /// Returns the dense id for `label`, registering it if unseen.
    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.ids.insert(label.to_owned(), id);
        self.labels.push(label.to_owned());
        id
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Records an undirected edge between two already-registered ids.
    /// Self-loops are ignored here; duplicates are removed in [`build`](Self::build).
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.labels.len() && v < self.labels.len());
        if u != v {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            self.edges.push((a as u32, b as u32));
        }
    }

    pub fn add_labelled_edge(&mut self, a: &str, b: &str) {
        let u = self.intern(a);
        let v = self.intern(b);
        self.add_edge(u, v);
    }

    pub fn has_edges(&self) -> bool {
        !self.edges.is_empty()
    }

    pub fn build(mut self) -> Graph {
        let n = self.labels.len();
        self.edges.sort_unstable();
        self.edges.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &self.edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in &self.edges {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            offsets: offsets
                .into_iter()
                .map(|o| u32::try_from(o).expect("more than u32::MAX adjacency entries"))
                .collect(),
            targets,
            labels: self.labels,
        }
    }
}

/// Marks removed nodes over an immutable [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalState {
    removed: Vec<bool>,
    removed_count: usize,
}

impl RemovalState {
    pub fn new(node_count: usize) -> Self {
        Self {
            removed: vec![false; node_count],
            removed_count: 0,
        }
    }

    pub fn for_graph(graph: &Graph) -> Self {
        Self::new(graph.node_count())
    }

    /// Removes `v`; returns `false` if it was already removed.
    pub fn remove(&mut self, v: usize) -> bool {
        if self.removed[v] {
            return false;
        }
        self.removed[v] = true;
        self.removed_count += 1;
        true
    }

    #[inline]
    pub fn is_removed(&self, v: usize) -> bool {
        self.removed[v]
    }

    pub fn removed_count(&self) -> usize {
        self.removed_count
    }

    pub fn node_count(&self) -> usize {
        self.removed.len()
    }

    pub fn residual_count(&self) -> usize {
        self.removed.len() - self.removed_count
    }

    /// Non-removed node ids in ascending order.
    pub fn residual_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.removed
            .iter()
            .enumerate()
            .filter(|(_, &r)| !r)
            .map(|(v, _)| v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSummary {
    /// Component sizes of the residual graph, largest first.
    pub component_sizes: Vec<usize>,
    pub gc_size: usize,
    /// `gc_size` relative to the node count of the original graph.
    pub gc_fraction: f64,
}

pub(crate) fn fraction(count: usize, node_count: usize) -> f64 {
    if node_count == 0 {
        0.0
    } else {
        count as f64 / node_count as f64
    }
}

/// Connected components of the residual graph.
pub fn components_summary(graph: &Graph, state: &RemovalState) -> ComponentSummary {
    let n = graph.node_count();
    assert_eq!(state.node_count(), n, "removal state does not match graph");
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    let mut sizes = Vec::new();
    for root in 0..n {
        if seen[root] || state.is_removed(root) {
            continue;
        }
        seen[root] = true;
        stack.push(root);
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for w in graph.neighbors(v) {
                if !seen[w] && !state.is_removed(w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let gc_size = sizes.first().copied().unwrap_or(0);
    ComponentSummary {
        component_sizes: sizes,
        gc_size,
        gc_fraction: fraction(gc_size, n),
    }
}

pub(crate) fn validate_attack(graph: &Graph, attack: &[usize]) -> Result<()> {
    let n = graph.node_count();
    let mut seen = vec![false; n];
    for &v in attack {
        if v >= n {
            return Err(Error::NodeOutOfRange {
                node: v,
                node_count: n,
            });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::DuplicateNode { node: v });
        }
    }
    Ok(())
}

/// Giant-component fraction after removing each prefix of `attack`.
///
/// Entry `Q` holds the fraction after removing the first `Q` attacked nodes, for
/// `Q = 0..=attack.len()`. The curve is built backwards: nodes are re-inserted in
/// reverse attack order into a union-find, so the whole curve costs near-linear time.
pub fn sq_curve_full(graph: &Graph, attack: &[usize]) -> Result<Vec<f64>> {
    validate_attack(graph, attack)?;
    let n = graph.node_count();
    let mut active = vec![true; n];
    for &v in attack {
        active[v] = false;
    }

    let mut sets = DisjointSets::new(n);
    let mut largest = 0;
    for u in 0..n {
        if !active[u] {
            continue;
        }
        largest = largest.max(1);
        for w in graph.neighbors(u) {
            if w > u && active[w] {
                largest = largest.max(sets.union(u, w));
            }
        }
    }

    let mut curve = vec![0.0; attack.len() + 1];
    curve[attack.len()] = fraction(largest, n);
    for (q, &v) in attack.iter().enumerate().rev() {
        active[v] = true;
        largest = largest.max(1);
        for w in graph.neighbors(v) {
            if active[w] {
                largest = largest.max(sets.union(v, w));
            }
        }
        curve[q] = fraction(largest, n);
    }
    Ok(curve)
}
