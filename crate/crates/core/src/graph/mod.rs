//! Undirected simple graphs on dense vertex labels `0..n`.

mod edge_list;
mod families;
mod gnp;
mod independent;
mod stats;
mod vertex_set;

pub use edge_list::{parse_edge_list, read_edge_list, write_edge_list};
pub use families::*;
pub use gnp::{sample_gnp, GnpSpec};
pub use independent::{
    independence_number_exact, independent_set_greedy, independent_set_local_search, is_independent, IndependenceResult,
};
pub use stats::{
    density_deviation, max_balanced_biclique_side, BalancedBiclique, Effort, EXACT_BICLIQUE_MAX_N,
};
pub use vertex_set::VertexSet;
pub(crate) use vertex_set::word_count;

use crate::error::{Error, Result};

/// An undirected simple graph with adjacency stored as one bitset row per vertex.
///
/// Values are immutable once built; every constructor validates symmetry and
/// loop-freeness.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Loops, out-of-range endpoints and
    /// repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::param(format!(
                    "edge {{{u},{v}}} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            if g.adj[u].contains(v) {
                return Err(Error::param(format!("duplicate edge {{{u},{v}}}")));
            }
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking that they describe a simple graph.
    pub fn from_rows(rows: Vec<VertexSet>) -> Result<Self> {
        let n = rows.len();
        let mut degree_sum = 0;
        for (v, row) in rows.iter().enumerate() {
            if row.universe() != n {
                return Err(Error::param(format!(
                    "row {v} has universe {} but graph has {n} vertices",
                    row.universe()
                )));
            }
            if row.contains(v) {
                return Err(Error::param(format!("self-loop at vertex {v}")));
            }
            for u in row {
                if !rows[u].contains(v) {
                    return Err(Error::param(format!("asymmetric adjacency at {{{v},{u}}}")));
                }
            }
            degree_sum += row.len();
        }
        Ok(Graph {
            adj: rows,
            m: degree_sum / 2,
        })
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Re-checks the structural invariants: symmetric rows, no loops, and
    /// `m` equal to half the degree sum.
    pub fn validate(&self) -> Result<()> {
        let rebuilt = Graph::from_rows(self.adj.clone())?;
        if rebuilt.m != self.m {
            return Err(Error::param(format!(
                "edge count {} disagrees with degree sum {}",
                self.m,
                2 * rebuilt.m
            )));
        }
        Ok(())
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe() != self.n() {
            return Err(Error::param(format!(
                "vertex set over universe {} used with a graph on {} vertices",
                set.universe(),
                self.n()
            )));
        }
        Ok(())
    }

    /// `e(U)`: the number of edges with both endpoints in `u`.
    pub fn edges_within(&self, u: &VertexSet) -> Result<usize> {
        self.check_set(u)?;
        Ok(u.iter().map(|v| self.adj[v].intersection_len(u)).sum::<usize>() / 2)
    }

    /// `G[U]` with vertices relabelled `0..|u|` in ascending original order.
    ///
    /// The returned map sends each new label to its original vertex.
    pub fn induced_subgraph(&self, u: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(u)?;
        let map = u.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let mut g = Graph::empty(map.len());
        for (new, &old) in map.iter().enumerate() {
            for w in self.adj[old].intersection(u).iter() {
                if index[w] > new {
                    g.add_edge_unchecked(new, index[w]);
                }
            }
        }
        Ok((g, map))
    }

    /// `V(G, A)`: vertices outside `a` adjacent to every member of `a`.
    pub fn common_neighborhood(&self, a: &VertexSet) -> Result<VertexSet> {
        self.check_set(a)?;
        let mut members = a.iter();
        let first = members
            .next()
            .ok_or_else(|| Error::param("common neighbourhood of the empty set"))?;
        let mut common = self.adj[first].clone();
        for v in members {
            common.intersect_with(&self.adj[v]);
        }
        common.difference_with(a);
        Ok(common)
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut seen = VertexSet::new(n);
        if perm.len() != n || perm.iter().any(|&p| p >= n || !seen.insert(p)) {
            return Err(Error::param("relabelling is not a permutation of 0..n"));
        }
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.add_edge_unchecked(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// Adjacency rows packed into one `u64` per vertex; only for `n <= 64`.
    pub(crate) fn small_rows(&self) -> Option<Vec<u64>> {
        (self.n() <= 64).then(|| self.adj.iter().map(|r| r.words().first().copied().unwrap_or(0)).collect())
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
