//! Seeded random graph generators plus a few deterministic families used in tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Preferential attachment with `m` edges per new node.
    BarabasiAlbert { m: usize },
    /// Each pair independently with probability `p`.
    ErdosRenyi { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub model: Model,
    pub nodes: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph> {
        match self.model {
            Model::BarabasiAlbert { m } => generate_ba(self.nodes, m, self.seed),
            Model::ErdosRenyi { p } => generate_er(self.nodes, p, self.seed),
        }
    }
}

/// Barabási–Albert graph grown from a complete graph on `m + 1` nodes. Every new
/// node links to `m` distinct existing nodes drawn with probability proportional
/// to their current degree, so `M = C(m+1, 2) + (N - m - 1) * m`.
pub fn generate_ba(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 || m >= n {
        return Err(Error::invalid(format!(
            "attachment count m={m} must satisfy 1 <= m < N={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m * (m + 1) / 2 + (n - m - 1) * m);
    // Every edge contributes both endpoints, so uniform picks are degree-weighted.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut chosen = Vec::with_capacity(m);
    for t in m + 1..n {
        chosen.clear();
        while chosen.len() < m {
            let v = endpoints[rng.gen_range(0..endpoints.len())];
            if !chosen.contains(&v) {
                chosen.push(v);
            }
        }
        for &v in &chosen {
            edges.push((v, t));
            endpoints.extend([v, t]);
        }
    }
    Graph::from_edges(n, edges)
}

/// Erdős–Rényi `G(N, p)`, using geometric skips between included pairs.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut edges = Vec::new();
    if p == 1.0 {
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
    } else if p > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let log_q = (1.0 - p).ln();
        let (mut v, mut w) = (1usize, -1i64);
        while v < n {
            let r: f64 = rng.gen();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((w as usize, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid ids")
}

/// Hub `0` joined to `n - 1` leaves.
pub fn star_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (0, v))).expect("valid ids")
}

pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid ids")
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid ids")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ba_edge_count() {
        let g = generate_ba(10, 2, 7).unwrap();
        // C(3, 2) + (10 - 3) * 2
        assert_eq!(g.edge_count(), 17);
        assert_eq!(generate_ba(500, 3, 1).unwrap().edge_count(), 6 + 496 * 3);
    }

    #[test]
    fn ba_rejects_bad_parameters() {
        assert!(generate_ba(5, 0, 1).is_err());
        assert!(generate_ba(5, 5, 1).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(
            generate_ba(200, 2, 9).unwrap(),
            generate_ba(200, 2, 9).unwrap()
        );
        assert_eq!(
            generate_er(200, 0.05, 9).unwrap(),
            generate_er(200, 0.05, 9).unwrap()
        );
        assert_ne!(
            generate_ba(200, 2, 9).unwrap(),
            generate_ba(200, 2, 10).unwrap()
        );
    }

    #[test]
    fn er_boundaries() {
        assert_eq!(generate_er(50, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(generate_er(50, 1.0, 3).unwrap().edge_count(), 50 * 49 / 2);
        assert!(generate_er(50, 1.5, 3).is_err());
        assert!(generate_er(50, -0.1, 3).is_err());
    }

    #[test]
    fn classic_families() {
        assert_eq!(path_graph(4).edge_count(), 3);
        assert_eq!(star_graph(5).degree(0), 4);
        assert_eq!(cycle_graph(4).edge_count(), 4);
        assert_eq!(complete_graph(5).edge_count(), 10);
    }
}
