//! Attack robustness estimation for undirected networks.
//!
//! The robustness of a network under an attack is `R = (1/N) * sum_{Q=1..N} s(Q)`,
//! where `s(Q)` is the giant-component fraction after the first `Q` removals.
//! [`attack`] evaluates classic ranking-based attacks exactly, and [`qre`]
//! estimates the worst-case `R` in sub-quadratic time by combining degree-shaped
//! sampling with pivot-sampled betweenness refinement.

pub mod attack;
pub mod centrality;
mod deadline;
pub mod error;
pub mod graph;
pub mod io;
pub mod netgen;
pub mod qre;
mod union_find;

pub use deadline::Deadline;
pub use error::{Error, Result};
pub use graph::{
    components_summary, sq_curve_full, ComponentSummary, Graph, GraphBuilder, RemovalState,
};
pub use union_find::DisjointSets;
