//! Reference implementations shared by the oracle and acceptance targets.

#![allow(dead_code)]

use std::collections::VecDeque;

use netquake::Graph;
use proptest::prelude::*;

pub fn arb_graph(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (1..=max_nodes).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=3 * n)
            .prop_map(move |edges| Graph::from_edges(n, edges).unwrap())
    })
}

pub fn arb_graph_and_attack(max_nodes: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_nodes).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// All-pairs distances by repeated relaxation on the adjacency matrix.
fn floyd(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Enumerates every shortest s-t path explicitly.
fn shortest_paths(
    adj: &[Vec<bool>],
    d: &[Vec<usize>],
    s: usize,
    t: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let here = *path.last().unwrap();
    if here == t {
        out.push(path.clone());
        return;
    }
    for next in 0..adj.len() {
        if adj[here][next] && d[s][next] == d[s][here] + 1 && d[next][t] + 1 == d[here][t] {
            path.push(next);
            shortest_paths(adj, d, s, t, path, out);
            path.pop();
        }
    }
}

pub fn brute_force_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let adj = adjacency(g);
    let d = floyd(&adj);
    let mut b = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] >= usize::MAX / 4 {
                continue;
            }
            let mut paths = Vec::new();
            shortest_paths(&adj, &d, s, t, &mut vec![s], &mut paths);
            let total = paths.len() as f64;
            let mut through = vec![0usize; n];
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    through[v] += 1;
                }
            }
            for v in 0..n {
                b[v] += through[v] as f64 / total;
            }
        }
    }
    b
}

/// Largest component by plain BFS after removing the first `q` attacked nodes.
pub fn forward_gc(g: &Graph, attack: &[usize], q: usize) -> usize {
    let n = g.node_count();
    let mut gone = vec![false; n];
    for &v in &attack[..q] {
        gone[v] = true;
    }
    let mut seen = gone.clone();
    let mut best = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        best = best.max(size);
    }
    best
}

pub fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= tol * (1.0 + y.abs()))
}
