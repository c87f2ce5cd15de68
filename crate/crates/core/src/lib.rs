//! Edge partitions of graphs into complete bipartite subgraphs.
//!
//! The crate computes the bipartition number `tau(G)` (fewest edge-disjoint
//! bicliques covering `E(G)`) and its star-free variant `tau'(G)` exactly on
//! small graphs, brackets `tau` between the spectral lower bound
//! `max(n+, n-)` and the constructive upper bounds `n - alpha(G)` and
//! `n - beta(G) + 1`, and provides the coverage machinery used to certify
//! edges that a given family of biclique left sides cannot cover.
//!
//! Modules:
//! - [`graph`]: graphs, seeded `G(n, p)` sampling, independence number, edge-list IO.
//! - [`spectral`]: adjacency inertia and the eigenvalue lower bound.
//! - [`partition`]: partitions, validators, constructions and the exact solvers.
//! - [`coverage`]: coverage traces, `f`, `g`, `h` and witness peeling.
//! - [`harness`]: seeded experiments and their reports.

pub mod coverage;
pub mod error;
pub mod graph;
pub mod harness;
pub mod partition;
pub mod seeding;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, GnpSpec, VertexSet};

use serde::{Deserialize, Serialize};

/// Whether a budgeted search ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Exact,
    /// The node budget ran out; the reported value is only the best found.
    Incomplete,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
