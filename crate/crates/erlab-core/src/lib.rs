//! Exact solvers, search kernels and explicit constructions for
//! Erdős–Rogers-type problems: how large an `F`-free induced subgraph must
//! every `H`-free graph contain?
//!
//! The crate provides
//! - a dense bit-packed [`graph::Graph`] kernel with products, unions,
//!   random models and graph6 I/O,
//! - subgraph/clique/colouring search ([`pattern`]),
//! - exact and greedy solvers for independence-type quantities, including
//!   `alpha_F` and exact `f_{F,H}(n)` at enumeration scale ([`solvers`]),
//! - `s`-domination ([`domination`]) and the randomized extraction
//!   procedures built on good sets, dense pairs and dependent random choice
//!   ([`procedures`]),
//! - finite-geometry constructions over GF(q^2), notably the Hermitian
//!   unital incidence structure ([`geometry`]),
//! - the product/blow-up constructions and their audits ([`constructions`]).
//!
//! Everything randomized takes an explicit [`rng::RngConfig`]; identical
//! configs give identical results on every platform and worker count.

pub mod bitset;
pub mod bipartite;
pub mod catalog;
pub mod constructions;
pub mod domination;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod graph6;
pub mod numeric;
pub mod pattern;
pub mod procedures;
pub mod rng;
pub mod solvers;

pub use bipartite::BipartiteIncidence;
pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::Graph;
pub use pattern::Pattern;
pub use rng::RngConfig;
pub use solvers::SolveReport;
